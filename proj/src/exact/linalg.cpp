#include "exact/linalg.hpp"

#include "exact/error.hpp"

namespace strata::exact {

GQVec zero_vec(std::size_t n) { return GQVec(n); }

GQVec unit_vec(std::size_t n, std::size_t k) {
  GQVec v(n);
  v.at(k) = GQ(1);
  return v;
}

bool is_zero_vec(const GQVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void axpy(GQVec& y, const GQ& a, const GQVec& x) {
  if (a.is_zero()) return;
  for (std::size_t k = 0; k < y.size(); ++k)
    if (!x[k].is_zero()) y[k] += a * x[k];
}

GQMatrix GQMatrix::identity(std::size_t n) {
  GQMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GQ(1);
  return m;
}

GQMatrix GQMatrix::from_rows(const std::vector<GQVec>& rows, std::size_t cols) {
  GQMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::ValidationError, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

GQMatrix GQMatrix::from_columns(const std::vector<GQVec>& cols, std::size_t rows) {
  GQMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) fail(ErrorCode::ValidationError, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

GQVec GQMatrix::row(std::size_t r) const {
  return GQVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

GQVec GQMatrix::col(std::size_t c) const {
  GQVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

GQVec GQMatrix::apply(const GQVec& v) const {
  if (v.size() != cols_) fail(ErrorCode::ValidationError, "matrix/vector size mismatch");
  GQVec out(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const GQ& x = (*this)(r, c);
      if (!x.is_zero()) out[r] += x * v[c];
    }
  }
  return out;
}

GQMatrix GQMatrix::transpose() const {
  GQMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

GQ GQMatrix::trace() const {
  GQ t(0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool GQMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

GQMatrix operator*(const GQMatrix& a, const GQMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::ValidationError, "matrix product size mismatch");
  GQMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const GQ& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

GQMatrix operator+(const GQMatrix& a, const GQMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ValidationError, "matrix sum size mismatch");
  GQMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

GQMatrix operator-(const GQMatrix& a, const GQMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::ValidationError, "matrix difference size mismatch");
  GQMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
  return m;
}

Echelon rref(GQMatrix m) {
  Echelon e;
  std::size_t lead = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(lead, j));
    GQ inv = m(lead, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!m(lead, j).is_zero()) m(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m(r, c).is_zero()) continue;
      GQ f = m(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!m(lead, j).is_zero()) m(r, j) -= f * m(lead, j);
    }
    e.pivots.push_back(c);
    ++lead;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const GQMatrix& m) { return rref(m).pivots.size(); }

std::vector<GQVec> nullspace(const GQMatrix& m) {
  Echelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<GQVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    GQVec v(cols);
    v[free] = GQ(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<GQVec> solve(const GQMatrix& m, const GQVec& b) {
  GQMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b.at(r);
  }
  Echelon e = rref(std::move(aug));
  GQVec x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == m.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, m.cols());
  }
  return x;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<GQVec>& vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t k = 0; k < ambient; ++k) s.insert(unit_vec(ambient, k));
  return s;
}

GQVec Subspace::reduce(GQVec v) const {
  if (v.size() != ambient_) fail(ErrorCode::ValidationError, "vector outside subspace ambient");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    GQ f = v[pivots_[r]];
    if (!f.is_zero()) axpy(v, -f, rows_[r]);
  }
  return v;
}

bool Subspace::insert(GQVec v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < v.size() && v[p].is_zero()) ++p;
  if (p == v.size()) return false;
  GQ inv = v[p].inverse();
  for (auto& x : v)
    if (!x.is_zero()) x *= inv;
  // keep the basis fully reduced so that reduce() is a single pass
  for (auto& row : rows_) {
    GQ f = row[p];
    if (!f.is_zero()) axpy(row, -f, v);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis())
    if (!contains(v)) return false;
  return true;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  // Solve sum x_i a_i = sum y_j b_j; the a-side combinations span the intersection.
  const std::size_t n = a.ambient();
  const std::size_t da = a.dim(), db = b.dim();
  GQMatrix m(n, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t r = 0; r < n; ++r) m(r, i) = a.basis()[i][r];
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t r = 0; r < n; ++r) m(r, da + j) = -b.basis()[j][r];
  Subspace out(n);
  for (const auto& sol : nullspace(m)) {
    GQVec v(n);
    for (std::size_t i = 0; i < da; ++i) axpy(v, sol[i], a.basis()[i]);
    out.insert(std::move(v));
  }
  return out;
}

}  // namespace strata::exact
