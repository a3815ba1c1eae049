#include "descent/linalg.hpp"

namespace descent {

Mat::Mat(const Tower* tw, unsigned k, std::size_t r, std::size_t c)
    : tw_(tw), k_(k), rows_(r), cols_(c), a_(r * c, tw->zero(k)) {}

Mat Mat::identity(const Tower* tw, unsigned k, std::size_t n) {
  Mat m(tw, k, n, n);
  for (std::size_t i = 0; i < n; i++) m.at(i, i) = tw->one(k);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) throw error("Mat::mul shape");
  Mat r(tw_, k_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t k2 = 0; k2 < cols_; k2++) {
      const FF& v = at(i, k2);
      if (v.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; j++)
        r.at(i, j) = r.at(i, j) + v * o.at(k2, j);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = r.a_[i] + o.a_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r = *this;
  for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = r.a_[i] - o.a_[i];
  return r;
}

Mat Mat::scaled(const FF& s) const {
  Mat r = *this;
  for (auto& v : r.a_) v = v * s;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); i++)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

std::vector<FF> Mat::apply(const std::vector<FF>& v) const {
  if (v.size() != cols_) throw error("Mat::apply shape");
  std::vector<FF> r(rows_, tw_->zero(k_));
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t j = 0; j < cols_; j++) r[i] = r[i] + at(i, j) * v[j];
  return r;
}

Mat Mat::transpose() const {
  Mat r(tw_, k_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t j = 0; j < cols_; j++) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::lifted(unsigned K) const {
  Mat r(tw_, K, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); i++) r.a_[i] = tw_->embed(a_[i], K);
  return r;
}

std::vector<std::size_t> Mat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; c++) {
    std::size_t sel = rows_;
    for (std::size_t i = r; i < rows_; i++)
      if (!at(i, c).is_zero()) { sel = i; break; }
    if (sel == rows_) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols_; j++) std::swap(at(sel, j), at(r, j));
    FF iv = at(r, c).inv();
    for (std::size_t j = c; j < cols_; j++) at(r, j) = at(r, j) * iv;
    for (std::size_t i = 0; i < rows_; i++) {
      if (i == r || at(i, c).is_zero()) continue;
      FF m = at(i, c);
      for (std::size_t j = c; j < cols_; j++) at(i, j) = at(i, j) - m * at(r, j);
    }
    pivots.push_back(c);
    r++;
  }
  return pivots;
}

std::size_t Mat::rank() const {
  Mat t = *this;
  return t.rref().size();
}

std::vector<std::vector<FF>> Mat::kernel() const {
  Mat t = *this;
  auto piv = t.rref();
  std::vector<bool> ispiv(cols_, false);
  for (auto c : piv) ispiv[c] = true;
  std::vector<std::vector<FF>> basis;
  for (std::size_t c = 0; c < cols_; c++) {
    if (ispiv[c]) continue;
    std::vector<FF> v(cols_, tw_->zero(k_));
    v[c] = tw_->one(k_);
    for (std::size_t k2 = 0; k2 < piv.size(); k2++) v[piv[k2]] = -t.at(k2, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) throw error("Mat::inverse square");
  Mat aug(tw_, k_, rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; i++) {
    for (std::size_t j = 0; j < cols_; j++) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = tw_->one(k_);
  }
  auto piv = aug.rref();
  if (piv.size() != rows_) return std::nullopt;
  for (std::size_t k2 = 0; k2 < piv.size(); k2++)
    if (piv[k2] != k2) return std::nullopt;
  Mat inv(tw_, k_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; i++)
    for (std::size_t j = 0; j < cols_; j++) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

FF Mat::det() const {
  if (rows_ != cols_) throw error("Mat::det square");
  Mat t = *this;
  FF d = tw_->one(k_);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_; c++) {
    std::size_t sel = rows_;
    for (std::size_t i = r; i < rows_; i++)
      if (!t.at(i, c).is_zero()) { sel = i; break; }
    if (sel == rows_) return tw_->zero(k_);
    if (sel != r) {
      for (std::size_t j = 0; j < cols_; j++) std::swap(t.at(sel, j), t.at(r, j));
      d = -d;
    }
    d = d * t.at(r, c);
    FF iv = t.at(r, c).inv();
    for (std::size_t i = r + 1; i < rows_; i++) {
      if (t.at(i, c).is_zero()) continue;
      FF m = t.at(i, c) * iv;
      for (std::size_t j = c; j < cols_; j++) t.at(i, j) = t.at(i, j) - m * t.at(r, j);
    }
    if (++r == rows_) break;
  }
  return d;
}

FF Mat::trace() const {
  FF s = tw_->zero(k_);
  for (std::size_t i = 0; i < rows_; i++) s = s + at(i, i);
  return s;
}

Mat Mat::frob(unsigned j) const {
  Mat r = *this;
  for (auto& v : r.a_) v = tw_->frobenius(v, j);
  return r;
}

std::optional<FF> Mat::proportionality(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return std::nullopt;
  std::optional<FF> c;
  for (std::size_t i = 0; i < a_.size(); i++) {
    bool za = a_[i].is_zero(), zb = o.a_[i].is_zero();
    if (za != zb) return std::nullopt;
    if (za) continue;
    FF ratio = o.a_[i] / a_[i];
    if (!c)
      c = ratio;
    else if (!(*c == ratio))
      return std::nullopt;
  }
  return c;  // nullopt if both matrices are zero
}

}  // namespace descent
