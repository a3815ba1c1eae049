#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace descent {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Arithmetic mod a prime p (p < 2^62).
struct Zp {
  u64 p = 0;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 neg(u64 a) const { return a ? p - a : 0; }
  u64 mul(u64 a, u64 b) const { return (u64)((u128)a * b % p); }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
};

// Dense matrix over F_p.
class FpMat {
public:
  FpMat() = default;
  FpMat(Zp f, std::size_t r, std::size_t c) : f_(f), rows_(r), cols_(c), a_(r, std::vector<u64>(c, 0)) {}

  static FpMat identity(Zp f, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u64& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  u64 at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  std::vector<u64>& row(std::size_t i) { return a_[i]; }
  const std::vector<u64>& row(std::size_t i) const { return a_[i]; }

  FpMat mul(const FpMat& o) const;
  std::vector<u64> apply(const std::vector<u64>& v) const;  // this * v
  FpMat pow(u64 e) const;
  FpMat transpose() const;

  // In-place row reduction; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Solve this * x = b; empty optional when inconsistent.
  std::optional<std::vector<u64>> solve(const std::vector<u64>& b) const;
  // Basis of the right kernel.
  std::vector<std::vector<u64>> kernel() const;
  std::optional<FpMat> inverse() const;
  u64 det() const;

private:
  Zp f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<u64>> a_;
};

}  // namespace descent
