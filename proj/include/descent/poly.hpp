#pragma once

#include <vector>

#include "descent/tower.hpp"

namespace descent {

// Dense univariate polynomial over F_{p^k}.
class FPoly {
public:
  FPoly() = default;
  FPoly(const Tower* tw, unsigned k) : tw_(tw), k_(k) {}
  FPoly(const Tower* tw, unsigned k, std::vector<FF> c);

  static FPoly X(const Tower* tw, unsigned k);
  static FPoly constant(const FF& c);

  const Tower* tower() const { return tw_; }
  unsigned field_degree() const { return k_; }
  int deg() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  const FF& operator[](std::size_t i) const { return c_[i]; }
  FF coeff(std::size_t i) const;
  FF lead() const;
  const std::vector<FF>& coeffs() const { return c_; }

  FPoly operator+(const FPoly& o) const;
  FPoly operator-(const FPoly& o) const;
  FPoly operator*(const FPoly& o) const;
  FPoly scaled(const FF& s) const;
  bool operator==(const FPoly& o) const;

  FPoly monic() const;
  FPoly pow(unsigned e) const;
  FPoly derivative() const;
  std::pair<FPoly, FPoly> divrem(const FPoly& d) const;
  FPoly operator/(const FPoly& d) const;
  FPoly operator%(const FPoly& d) const;
  bool divides(const FPoly& f) const;

  FF eval(const FF& at) const;
  // shift coefficients into a larger field
  FPoly lifted(unsigned K) const;

private:
  const Tower* tw_ = nullptr;
  unsigned k_ = 1;
  std::vector<FF> c_;  // no trailing zeros
  void trim();
};

FPoly poly_gcd(FPoly a, FPoly b);                      // monic gcd
FPoly poly_powmod(const FPoly& a, u64 e, const FPoly& m);
// a^((q^d - 1)/2) mod m, where q = p^k is the coefficient field size
FPoly poly_pow_halforder(const FPoly& a, unsigned d, const FPoly& m);
// x -> x^p applied to the polynomial coefficients... (see .cpp)
FPoly poly_qth_power_mod(const FPoly& a, const FPoly& m);  // a^q mod m

bool poly_is_irreducible(const FPoly& f);

struct FactorMult {
  FPoly f;  // monic irreducible
  unsigned mult;
};
struct Factorization {
  FF unit;
  std::vector<FactorMult> factors;  // sorted for determinism
};
Factorization poly_factor(const FPoly& f);
std::vector<FF> poly_roots(const FPoly& f);  // distinct roots in the coefficient field

}  // namespace descent
