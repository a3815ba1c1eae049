#include "descent/fplin.hpp"

namespace descent {

u64 Zp::pow(u64 a, u64 e) const {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Zp::inv(u64 a) const {
  a %= p;
  if (a == 0) throw error("Zp::inv of zero");
  // extended euclid
  long long t = 0, nt = 1;
  long long r = (long long)p, nr = (long long)a;
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (t < 0) t += (long long)p;
  return (u64)t;
}

FpMat FpMat::identity(Zp f, std::size_t n) {
  FpMat m(f, n, n);
  for (std::size_t i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::mul(const FpMat& o) const {
  if (cols_ != o.rows_) throw error("FpMat::mul shape");
  FpMat r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t k = 0; k < cols_; k++) {
      u64 v = a_[i][k];
      if (!v) continue;
      for (std::size_t j = 0; j < o.cols_; j++)
        r.a_[i][j] = f_.add(r.a_[i][j], f_.mul(v, o.a_[k][j]));
    }
  return r;
}

std::vector<u64> FpMat::apply(const std::vector<u64>& v) const {
  if (v.size() != cols_) throw error("FpMat::apply shape");
  std::vector<u64> r(rows_, 0);
  for (std::size_t i = 0; i < rows_; i++) {
    u64 s = 0;
    for (std::size_t j = 0; j < cols_; j++) s = f_.add(s, f_.mul(a_[i][j], v[j]));
    r[i] = s;
  }
  return r;
}

FpMat FpMat::pow(u64 e) const {
  if (rows_ != cols_) throw error("FpMat::pow square");
  FpMat r = identity(f_, rows_), b = *this;
  while (e) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

FpMat FpMat::transpose() const {
  FpMat r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t j = 0; j < cols_; j++) r.a_[j][i] = a_[i][j];
  return r;
}

std::vector<std::size_t> FpMat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; c++) {
    std::size_t sel = r;
    while (sel < rows_ && a_[sel][c] == 0) sel++;
    if (sel == rows_) continue;
    std::swap(a_[sel], a_[r]);
    u64 iv = f_.inv(a_[r][c]);
    for (std::size_t j = c; j < cols_; j++) a_[r][j] = f_.mul(a_[r][j], iv);
    for (std::size_t i = 0; i < rows_; i++) {
      if (i == r || a_[i][c] == 0) continue;
      u64 m = a_[i][c];
      for (std::size_t j = c; j < cols_; j++) a_[i][j] = f_.sub(a_[i][j], f_.mul(m, a_[r][j]));
    }
    pivots.push_back(c);
    r++;
  }
  return pivots;
}

std::size_t FpMat::rank() const {
  FpMat t = *this;
  return t.rref().size();
}

std::optional<std::vector<u64>> FpMat::solve(const std::vector<u64>& b) const {
  if (b.size() != rows_) throw error("FpMat::solve shape");
  FpMat aug(f_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; i++) {
    for (std::size_t j = 0; j < cols_; j++) aug.a_[i][j] = a_[i][j];
    aug.a_[i][cols_] = b[i];
  }
  auto piv = aug.rref();
  for (auto c : piv)
    if (c == cols_) return std::nullopt;
  std::vector<u64> x(cols_, 0);
  for (std::size_t k = 0; k < piv.size(); k++) x[piv[k]] = aug.a_[k][cols_];
  return x;
}

std::vector<std::vector<u64>> FpMat::kernel() const {
  FpMat t = *this;
  auto piv = t.rref();
  std::vector<bool> ispiv(cols_, false);
  for (auto c : piv) ispiv[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t c = 0; c < cols_; c++) {
    if (ispiv[c]) continue;
    std::vector<u64> v(cols_, 0);
    v[c] = 1;
    for (std::size_t k = 0; k < piv.size(); k++) v[piv[k]] = f_.neg(t.a_[k][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpMat> FpMat::inverse() const {
  if (rows_ != cols_) throw error("FpMat::inverse square");
  FpMat aug(f_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; i++) {
    for (std::size_t j = 0; j < cols_; j++) aug.a_[i][j] = a_[i][j];
    aug.a_[i][cols_ + i] = 1;
  }
  auto piv = aug.rref();
  if (piv.size() != rows_ || piv.back() != rows_ - 1) {
    // pivots must be exactly the left block
    for (std::size_t k = 0; k < piv.size(); k++)
      if (piv[k] != k) return std::nullopt;
    if (piv.size() != rows_) return std::nullopt;
  }
  FpMat inv(f_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t j = 0; j < cols_; j++) inv.a_[i][j] = aug.a_[i][cols_ + j];
  return inv;
}

u64 FpMat::det() const {
  if (rows_ != cols_) throw error("FpMat::det square");
  FpMat t = *this;
  u64 d = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_; c++) {
    std::size_t sel = r;
    while (sel < rows_ && t.a_[sel][c] == 0) sel++;
    if (sel == rows_) return 0;
    if (sel != r) { std::swap(t.a_[sel], t.a_[r]); d = f_.neg(d); }
    d = f_.mul(d, t.a_[r][c]);
    u64 iv = f_.inv(t.a_[r][c]);
    for (std::size_t i = r + 1; i < rows_; i++) {
      if (t.a_[i][c] == 0) continue;
      u64 m = f_.mul(t.a_[i][c], iv);
      for (std::size_t j = c; j < cols_; j++) t.a_[i][j] = f_.sub(t.a_[i][j], f_.mul(m, t.a_[r][j]));
    }
    if (++r == rows_) break;
  }
  return d;
}

}  // namespace descent
