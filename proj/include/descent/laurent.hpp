#pragma once

#include <vector>

#include "descent/tower.hpp"

namespace descent {

// Truncated Laurent series over F_{p^k}: sum_{i>=0} c[i] t^(lead+i),
// carrying `prec` meaningful coefficients.
class Laurent {
public:
  Laurent() = default;
  Laurent(const Tower* tw, unsigned k, int lead, std::vector<FF> c, unsigned prec);
  static Laurent zero(const Tower* tw, unsigned k, unsigned prec);
  static Laurent t_power(const Tower* tw, unsigned k, int e, unsigned prec);
  static Laurent constant(const FF& c, unsigned prec);

  const Tower* tower() const { return tw_; }
  unsigned field_degree() const { return k_; }
  bool is_zero() const { return c_.empty(); }
  // valuation; throws on (truncation-)zero
  int val() const;
  FF lead_coeff() const;
  unsigned prec() const { return prec_; }
  // coefficient of t^e
  FF coeff(int e) const;

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator/(const Laurent& o) const;
  Laurent inv() const;
  Laurent scaled(const FF& s) const;
  Laurent pow(unsigned e) const;

private:
  const Tower* tw_ = nullptr;
  unsigned k_ = 1;
  int lead_ = 0;
  std::vector<FF> c_;  // normalized: c_[0] != 0 unless empty
  unsigned prec_ = 0;
  void normalize();
};

// Expansions at the origin of E: y^2 = x^3 + a4 x + a6 in the local
// parameter t = x/y, with x = t^-2 (1 + O(t)), y = t^-3 (1 + O(t)).
struct CurveExpansion {
  Laurent x, y;
};
CurveExpansion curve_expansion(const Tower* tw, const FF& a4, const FF& a6, unsigned prec);

}  // namespace descent
