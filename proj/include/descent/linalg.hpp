#pragma once

#include <optional>
#include <vector>

#include "descent/tower.hpp"

namespace descent {

// Dense matrix over a single tower field F_{p^k}.
class Mat {
public:
  Mat() = default;
  Mat(const Tower* tw, unsigned k, std::size_t r, std::size_t c);
  static Mat identity(const Tower* tw, unsigned k, std::size_t n);

  const Tower* tower() const { return tw_; }
  unsigned field_degree() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FF& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FF& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const FF& s) const;
  bool operator==(const Mat& o) const;
  std::vector<FF> apply(const std::vector<FF>& v) const;
  Mat transpose() const;
  Mat lifted(unsigned K) const;  // embed all entries

  std::vector<std::size_t> rref();  // in place, returns pivot columns
  std::size_t rank() const;
  std::vector<std::vector<FF>> kernel() const;
  std::optional<Mat> inverse() const;
  FF det() const;
  FF trace() const;

  // entrywise Frobenius
  Mat frob(unsigned j = 1) const;

  // is o == c * this for some scalar c (this nonzero)? returns c
  std::optional<FF> proportionality(const Mat& o) const;

private:
  const Tower* tw_ = nullptr;
  unsigned k_ = 1;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FF> a_;
};

}  // namespace descent
