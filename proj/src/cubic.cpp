#include "descent/cubic.hpp"

#include <numeric>

namespace descent {

const std::array<std::array<unsigned, 3>, 10> kCubicMonomials = {{{3, 0, 0},
                                                                  {2, 1, 0},
                                                                  {2, 0, 1},
                                                                  {1, 2, 0},
                                                                  {1, 1, 1},
                                                                  {1, 0, 2},
                                                                  {0, 3, 0},
                                                                  {0, 2, 1},
                                                                  {0, 1, 2},
                                                                  {0, 0, 3}}};

namespace {
struct InvTerm {
  std::array<unsigned, 10> expo;
  long long coef;
};
#include "inv_tables.inc"

FF eval_invariant(const TernaryCubic& F, const InvTerm* table, std::size_t len) {
  const Tower* tw = F.tw;
  unsigned D = 1;
  for (auto& x : F.c) D = std::lcm(D, x.degree());
  FF acc = tw->zero(D);
  for (std::size_t t = 0; t < len; t++) {
    long long cf = table[t].coef;
    u64 p = tw->p();
    u64 cmod = (u64)(((cf % (long long)p) + (long long)p) % (long long)p);
    if (cmod == 0) continue;
    FF term = tw->from_int(cmod, D);
    for (unsigned i = 0; i < 10; i++)
      for (unsigned e = 0; e < table[t].expo[i]; e++) term = term * F.c[i];
    acc = acc + term;
  }
  return acc;
}
}  // namespace

std::vector<u64> pencil_invariant_form(const TernaryCubic& F1, const TernaryCubic& F2, unsigned degree) {
  const Tower* tw = F1.tw;
  Zp zp = tw->zp();
  const InvTerm* table = degree == 4 ? kQuarticInv : kSexticInv;
  std::size_t len = degree == 4 ? sizeof(kQuarticInv) / sizeof(InvTerm) : sizeof(kSexticInv) / sizeof(InvTerm);
  long long sign = degree == 4 ? 1 : -1;  // c6 = -T
  std::vector<u64> out(degree + 1, 0);
  for (std::size_t t = 0; t < len; t++) {
    long long cf = sign * table[t].coef;
    u64 cmod = (u64)(((cf % (long long)zp.p) + (long long)zp.p) % (long long)zp.p);
    if (!cmod) continue;
    std::vector<u64> prod{cmod};  // binary form, starts as the constant
    for (unsigned i = 0; i < 10; i++)
      for (unsigned e = 0; e < table[t].expo[i]; e++) {
        std::vector<u64> lin{F1.c[i].const_coeff(), F2.c[i].const_coeff()};
        std::vector<u64> next(prod.size() + 1, 0);
        for (std::size_t a = 0; a < prod.size(); a++)
          for (std::size_t b = 0; b < 2; b++) next[a + b] = zp.add(next[a + b], zp.mul(prod[a], lin[b]));
        prod = std::move(next);
      }
    for (std::size_t k = 0; k < prod.size(); k++) out[k] = zp.add(out[k], prod[k]);
  }
  return out;
}

bool TernaryCubic::is_zero() const {
  for (auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

FF TernaryCubic::eval(const FF& x, const FF& y, const FF& z) const {
  unsigned D = std::lcm(std::lcm(x.degree(), y.degree()), z.degree());
  FF X = tw->embed(x, D), Y = tw->embed(y, D), Z = tw->embed(z, D);
  FF acc = tw->zero(D);
  for (unsigned i = 0; i < 10; i++) {
    auto [a, b, cc] = kCubicMonomials[i];
    FF t = tw->one(D);
    for (unsigned e = 0; e < a; e++) t = t * X;
    for (unsigned e = 0; e < b; e++) t = t * Y;
    for (unsigned e = 0; e < cc; e++) t = t * Z;
    acc = acc + c[i] * t;
  }
  return acc;
}

TernaryCubic TernaryCubic::scaled(const FF& s) const {
  TernaryCubic r = *this;
  for (auto& x : r.c) x = x * s;
  return r;
}

TernaryCubic TernaryCubic::transformed(const Mat& M) const {
  // F(M v): expand the composition coefficientwise
  unsigned D = std::lcm(M.field_degree(), [&] {
    unsigned d = 1;
    for (auto& x : c) d = std::lcm(d, x.degree());
    return d;
  }());
  const Tower* t = tw;
  // linear forms L_a(v) = sum_j M[a][j] v_j; accumulate coefficient of each
  // cubic monomial of F(Mv) by expanding products of the three linear forms
  std::vector<FF> out(10, t->zero(D));
  for (unsigned i = 0; i < 10; i++) {
    if (c[i].is_zero()) continue;
    auto [ea, eb, ec2] = kCubicMonomials[i];
    // multiset of row indices for this monomial
    std::vector<unsigned> rows;
    for (unsigned e = 0; e < ea; e++) rows.push_back(0);
    for (unsigned e = 0; e < eb; e++) rows.push_back(1);
    for (unsigned e = 0; e < ec2; e++) rows.push_back(2);
    FF ci = t->embed(c[i], D);
    for (unsigned j0 = 0; j0 < 3; j0++)
      for (unsigned j1 = 0; j1 < 3; j1++)
        for (unsigned j2 = 0; j2 < 3; j2++) {
          FF term = ci * t->embed(M.at(rows[0], j0), D) * t->embed(M.at(rows[1], j1), D) *
                    t->embed(M.at(rows[2], j2), D);
          unsigned ex = (j0 == 0) + (j1 == 0) + (j2 == 0);
          unsigned ey = (j0 == 1) + (j1 == 1) + (j2 == 1);
          unsigned ez = (j0 == 2) + (j1 == 2) + (j2 == 2);
          for (unsigned k = 0; k < 10; k++)
            if (kCubicMonomials[k] == std::array<unsigned, 3>{ex, ey, ez}) {
              out[k] = out[k] + term;
              break;
            }
        }
  }
  return TernaryCubic{t, out};
}

TernaryCubic TernaryCubic::normalized() const {
  for (auto& x : c)
    if (!x.is_zero()) return scaled(x.inv());
  return *this;
}

bool TernaryCubic::proportional_to(const TernaryCubic& o) const {
  std::optional<FF> ratio;
  for (unsigned i = 0; i < 10; i++) {
    bool za = c[i].is_zero(), zb = o.c[i].is_zero();
    if (za != zb) return false;
    if (za) continue;
    FF r = o.c[i] / c[i];
    if (!ratio)
      ratio = r;
    else if (!(*ratio == r))
      return false;
  }
  return ratio.has_value();
}

TernaryCubic weierstrass_cubic(const Curve& E) {
  const Tower* tw = E.tw;
  TernaryCubic F{tw, std::vector<FF>(10, tw->zero(1))};
  F.c[0] = -tw->one(1);   // x^3
  F.c[7] = tw->one(1);    // y^2 z
  F.c[5] = -E.a4;         // x z^2
  F.c[9] = -E.a6;         // z^3
  return F;
}

FF cubic_c4(const TernaryCubic& F) {
  return eval_invariant(F, kQuarticInv, sizeof(kQuarticInv) / sizeof(InvTerm));
}

FF cubic_c6(const TernaryCubic& F) {
  return -eval_invariant(F, kSexticInv, sizeof(kSexticInv) / sizeof(InvTerm));
}

FF cubic_disc(const TernaryCubic& F) {
  FF c4 = cubic_c4(F), c6 = cubic_c6(F);
  return (c4 * c4 * c4 - c6 * c6) / F.tw->from_int(1728 % F.tw->p());
}

bool cubic_smooth(const TernaryCubic& F) { return !cubic_disc(F).is_zero(); }

Curve jacobian_curve(const TernaryCubic& F) {
  const Tower* tw = F.tw;
  FF c4 = cubic_c4(F), c6 = cubic_c6(F);
  FF a4 = -tw->from_int(27 % tw->p()) * c4;
  FF a6 = -tw->from_int(54 % tw->p()) * c6;
  if (!a4.in_prime_field() || !a6.in_prime_field()) throw error("jacobian_curve: invariants not rational");
  return make_curve(tw, tw->from_int(a4.const_coeff()), tw->from_int(a6.const_coeff()));
}

static bool invariant_pairs_match(const Tower* tw, const FF& c4f, const FF& c6f, const FF& c4e, const FF& c6e) {
  bool z4f = c4f.is_zero(), z4e = c4e.is_zero();
  bool z6f = c6f.is_zero(), z6e = c6e.is_zero();
  if (z4f != z4e || z6f != z6e) return false;
  u64 q = tw->p();  // base-field tests (all inputs rational)
  auto nth_power_exists = [&](const FF& w, u64 n) {
    u64 g = std::gcd(n, q - 1);
    return w.pow((q - 1) / g) == tw->one(w.degree());
  };
  if (z4f) return nth_power_exists(c6f / c6e, 6);
  if (z6f) return nth_power_exists(c4f / c4e, 4);
  FF w4 = c4f / c4e, w6 = c6f / c6e;
  FF s = w6 / w4;  // u^2
  if (!(s * s == w4) || !(s * s * s == w6)) return false;
  return nth_power_exists(s, 2);
}

bool jacobian_matches(const TernaryCubic& F, const Curve& E) {
  return invariant_pairs_match(F.tw, cubic_c4(F), cubic_c6(F), E.c4(), E.c6());
}

bool same_invariant_class(const TernaryCubic& F, const TernaryCubic& G) {
  return invariant_pairs_match(F.tw, cubic_c4(F), cubic_c6(F), cubic_c4(G), cubic_c6(G));
}

long count_plane_points(const TernaryCubic& F, unsigned k) {
  const Tower* tw = F.tw;
  tw->extend(k);
  u64 p = tw->p();
  u64 qk = 1;
  for (unsigned i = 0; i < k; i++) qk *= p;
  // enumerate field elements by coefficient vectors
  std::vector<FF> elems;
  elems.reserve(qk);
  std::vector<u64> cv(k, 0);
  for (u64 t = 0; t < qk; t++) {
    u64 v = t;
    for (unsigned i = 0; i < k; i++) {
      cv[i] = v % p;
      v /= p;
    }
    elems.push_back(tw->make(k, cv));
  }
  long cnt = 0;
  FF one = tw->one(k), zero = tw->zero(k);
  // (1 : y : z), (0 : 1 : z), (0 : 0 : 1)
  for (const FF& y : elems)
    for (const FF& z : elems)
      if (F.eval(one, y, z).is_zero()) cnt++;
  for (const FF& z : elems)
    if (F.eval(zero, one, z).is_zero()) cnt++;
  if (F.eval(zero, zero, one).is_zero()) cnt++;
  return cnt;
}

bool has_rational_point(const TernaryCubic& F) { return count_plane_points(F, 1) > 0; }

bool stabilized_by(const TernaryCubic& F, const Mat& M) {
  TernaryCubic G = F.transformed(M);
  return F.proportional_to(G) || G.proportional_to(F);
}

}  // namespace descent
