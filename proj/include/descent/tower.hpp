#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "descent/fplin.hpp"

namespace descent {

class Tower;

// Element of F_{p^k}: coefficient vector of length k over F_p with respect
// to the power basis of the degree-k generator.
class FF {
public:
  FF() = default;
  FF(const Tower* tw, unsigned deg, std::vector<u64> c);

  const Tower* tower() const { return tw_; }
  unsigned degree() const { return deg_; }
  const std::vector<u64>& coeffs() const { return c_; }

  bool is_zero() const;
  bool in_prime_field() const;
  u64 const_coeff() const { return c_.empty() ? 0 : c_[0]; }

  FF operator+(const FF& o) const;
  FF operator-(const FF& o) const;
  FF operator-() const;
  FF operator*(const FF& o) const;
  FF operator/(const FF& o) const;
  bool operator==(const FF& o) const;
  bool operator!=(const FF& o) const { return !(*this == o); }
  bool operator<(const FF& o) const;  // lexicographic, for deterministic choices

  FF inv() const;
  FF pow(u64 e) const;
  // x^((p^d - 1)/g), g | p^d - 1; exact big exponent via base-p digits.
  FF pow_subgroup_exponent(unsigned d, u64 g) const;
  FF frob(unsigned j = 1) const;  // x -> x^(p^j)

private:
  const Tower* tw_ = nullptr;
  unsigned deg_ = 0;
  std::vector<u64> c_;
  friend class Tower;
};

// A lattice of explicit extensions of F_p with compatible embeddings and
// cached Frobenius matrices. Fields are indexed by their degree over F_p.
class Tower {
public:
  Tower(u64 p, u64 seed);
  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  u64 p() const { return zp_.p; }
  Zp zp() const { return zp_; }
  std::mt19937_64& rng() const { return rng_; }

  struct Field {
    unsigned k;
    std::vector<u64> defining;  // monic, length k+1, over F_p
  };

  // Creates the degree-k field (and all embeddings) if absent.
  const Field& extend(unsigned k) const;
  bool has_field(unsigned k) const;
  std::vector<unsigned> registered_degrees() const;

  FF zero(unsigned k = 1) const;
  FF one(unsigned k = 1) const;
  FF from_int(u64 v, unsigned k = 1) const;
  FF gen(unsigned k) const;
  FF make(unsigned k, std::vector<u64> coeffs) const;
  FF random_element(unsigned k) const;
  FF random_nonzero(unsigned k) const;

  // Embed x into the degree-K field (degree(x) | K required).
  FF embed(const FF& x, unsigned K) const;
  // Bring both to the smallest common field (lcm of degrees).
  std::pair<FF, FF> lift_common(const FF& a, const FF& b) const;
  // Exact test + extraction of x into the degree-d subfield.
  std::optional<FF> extract(const FF& x, unsigned d) const;
  bool in_subfield(const FF& x, unsigned d) const;

  FF frobenius(const FF& x, unsigned j) const;

  // Smallest d | degree(x) with x in F_{p^d}.
  unsigned minimal_field_degree(const FF& x) const;

  // r with r^n = x if one exists in x's field (lexicographically smallest root).
  std::optional<FF> nth_root(const FF& x, unsigned n) const;

  // raw helpers used by the polynomial layer
  std::vector<u64> ff_mul_raw(unsigned k, const std::vector<u64>& a, const std::vector<u64>& b) const;

private:
  struct FieldData {
    Field pub;
    FpMat frob;                       // p-power map as k x k matrix
    std::vector<FpMat> frob_pows;     // lazily filled powers
  };
  struct Emb {
    std::vector<u64> gen_image;  // coeffs in target field
    FpMat mat;                   // K x k matrix over F_p
    FpMat ext_rref;              // cached [mat | I] rref for extraction
    std::vector<std::size_t> ext_piv;
  };

  FieldData& fdata(unsigned k) const;
  const Emb& emb(unsigned from, unsigned to) const;
  void make_field(unsigned k) const;
  void make_embedding(unsigned from, unsigned to) const;
  std::vector<u64> find_irreducible(unsigned k) const;
  std::vector<u64> eval_prime_poly(const std::vector<u64>& poly, const FF& at) const;

  Zp zp_;
  mutable std::mt19937_64 rng_;
  mutable std::map<unsigned, std::unique_ptr<FieldData>> fields_;
  mutable std::map<std::pair<unsigned, unsigned>, Emb> embs_;
};

}  // namespace descent
