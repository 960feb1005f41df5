#include "findim/algebra.hpp"

#include <algorithm>
#include <random>

#include "exact/error.hpp"

namespace strata::findim {

namespace {

FinDimAlgebra::Sparse to_sparse(const GQVec& v) {
  FinDimAlgebra::Sparse s;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) s.emplace_back(k, v[k]);
  return s;
}

std::string triple_str(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

FinDimAlgebra::FinDimAlgebra(std::size_t dim) : dim_(dim), table_(dim * dim) {
  if (dim > kMaxDim) fail(ErrorCode::OrbitTooLarge, "algebra dimension " + std::to_string(dim) + " exceeds 128");
}

void FinDimAlgebra::set_product(std::size_t i, std::size_t j, const GQVec& value) {
  if (value.size() != dim_) fail(ErrorCode::ValidationError, "structure constant vector has wrong length");
  table_.at(i * dim_ + j) = to_sparse(value);
}

void FinDimAlgebra::set_product(std::size_t i, std::size_t j, Sparse value) {
  for (const auto& [k, c] : value)
    if (k >= dim_) fail(ErrorCode::ValidationError, "structure constant index out of range");
  std::sort(value.begin(), value.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::erase_if(value, [](const auto& t) { return t.second.is_zero(); });
  table_.at(i * dim_ + j) = std::move(value);
}

GQVec FinDimAlgebra::mul(const GQVec& x, const GQVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) fail(ErrorCode::ValidationError, "algebra element has wrong length");
  GQVec out(dim_);
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < dim_; ++j)
    if (!y[j].is_zero()) ys.push_back(j);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j : ys) {
      const auto& p = table_[i * dim_ + j];
      if (p.empty()) continue;
      GQ f = x[i] * y[j];
      for (const auto& [k, c] : p) out[k] += f * c;
    }
  }
  return out;
}

bool FinDimAlgebra::is_associative(std::string* witness, std::size_t samples) const {
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    GQVec bi = basis(i), bj = basis(j), bk = basis(k);
    if (mul(mul(bi, bj), bk) == mul(bi, mul(bj, bk))) return true;
    if (witness) *witness = "associativity fails on basis triple " + triple_str(i, j, k);
    return false;
  };
  if (dim_ <= 32) {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!check(i, j, k)) return false;
    return true;
  }
  std::mt19937_64 gen(0x5eed);
  std::uniform_int_distribution<std::size_t> d(0, dim_ - 1);
  for (std::size_t s = 0; s < samples; ++s)
    if (!check(d(gen), d(gen), d(gen))) return false;
  return true;
}

bool FinDimAlgebra::unit_ok() const {
  if (!unit_) return true;
  for (std::size_t i = 0; i < dim_; ++i) {
    GQVec b = basis(i);
    if (!(mul(*unit_, b) == b) || !(mul(b, *unit_) == b)) return false;
  }
  return true;
}

bool FinDimAlgebra::marked_central_ok(std::string* witness) const {
  for (std::size_t m = 0; m < marked_.size(); ++m)
    for (std::size_t i = 0; i < dim_; ++i) {
      GQVec b = basis(i);
      if (!(mul(marked_[m], b) == mul(b, marked_[m]))) {
        if (witness) *witness = "marked element " + std::to_string(m) + " does not commute with basis element " + std::to_string(i);
        return false;
      }
    }
  return true;
}

GQMatrix FinDimAlgebra::left_matrix(const GQVec& x) const {
  std::vector<GQVec> cols;
  for (std::size_t j = 0; j < dim_; ++j) cols.push_back(mul(x, basis(j)));
  return GQMatrix::from_columns(cols, dim_);
}

FinDimAlgebra FinDimAlgebra::matrix_algebra(std::size_t n) {
  FinDimAlgebra a(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) a.set_product(r * n + s, s * n + t, Sparse{{r * n + t, GQ(1)}});
  GQVec u(n * n);
  for (std::size_t r = 0; r < n; ++r) u[r * n + r] = GQ(1);
  a.set_unit(u);
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) labels.push_back("E" + std::to_string(r + 1) + std::to_string(s + 1));
  a.set_labels(labels);
  return a;
}

FinDimAlgebra FinDimAlgebra::direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  const std::size_t da = a.dim(), db = b.dim();
  FinDimAlgebra s(da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) s.set_product(i, j, a.product(i, j));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      Sparse p = b.product(i, j);
      for (auto& t : p) t.first += da;
      s.set_product(da + i, da + j, std::move(p));
    }
  if (a.unit() && b.unit()) {
    GQVec u(da + db);
    std::copy(a.unit()->begin(), a.unit()->end(), u.begin());
    std::copy(b.unit()->begin(), b.unit()->end(), u.begin() + static_cast<std::ptrdiff_t>(da));
    s.set_unit(u);
  }
  return s;
}

FinDimAlgebra FinDimAlgebra::matrices_over(const FinDimAlgebra& a, std::size_t n) {
  const std::size_t d = a.dim();
  if (n * n * d > kMaxDim)
    fail(ErrorCode::OrbitTooLarge, "M_" + std::to_string(n) + " over a " + std::to_string(d) + "-dimensional algebra exceeds 128");
  FinDimAlgebra m(n * n * d);
  auto idx = [&](std::size_t r, std::size_t s, std::size_t i) { return (r * n + s) * d + i; };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) {
            Sparse p = a.product(i, j);
            for (auto& term : p) term.first = idx(r, t, term.first);
            m.set_product(idx(r, s, i), idx(s, t, j), std::move(p));
          }
  if (a.unit()) {
    GQVec u(n * n * d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < d; ++i) u[idx(r, r, i)] = (*a.unit())[i];
    m.set_unit(u);
  }
  std::vector<GQVec> marked;
  for (const auto& c : a.marked_central()) {
    GQVec v(n * n * d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < d; ++i) v[idx(r, r, i)] = c[i];
    marked.push_back(v);
  }
  m.set_marked_central(marked);
  return m;
}

QuotientMap::QuotientMap(const Subspace& j, const Subspace& i) : j_(j), i_in_j_(j.dim()) {
  for (const auto& u : i.basis()) {
    GQVec c(j.dim());
    for (std::size_t r = 0; r < j.dim(); ++r) c[r] = u[j.pivots()[r]];
    i_in_j_.insert(c);
  }
  std::vector<bool> taken(j.dim(), false);
  for (auto p : i_in_j_.pivots()) taken[p] = true;
  for (std::size_t r = 0; r < j.dim(); ++r)
    if (!taken[r]) complement_.push_back(r);
}

GQVec QuotientMap::coords(const GQVec& v) const {
  GQVec c(j_.dim());
  for (std::size_t r = 0; r < j_.dim(); ++r) c[r] = v[j_.pivots()[r]];
  c = i_in_j_.reduce(std::move(c));
  GQVec out(complement_.size());
  for (std::size_t a = 0; a < complement_.size(); ++a) out[a] = c[complement_[a]];
  return out;
}

GQVec QuotientMap::lift(const GQVec& c) const {
  GQVec v(j_.ambient());
  for (std::size_t a = 0; a < complement_.size(); ++a) exact::axpy(v, c[a], j_.basis()[complement_[a]]);
  return v;
}

FinDimAlgebra subquotient(const FinDimAlgebra& a, const QuotientMap& q) {
  const std::size_t k = q.dim();
  FinDimAlgebra s(k);
  std::vector<GQVec> lifts;
  for (std::size_t x = 0; x < k; ++x) lifts.push_back(q.lift(exact::unit_vec(k, x)));
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) s.set_product(x, y, q.coords(a.mul(lifts[x], lifts[y])));
  return s;
}

bool is_two_sided_ideal(const FinDimAlgebra& a, const Subspace& s) {
  for (const auto& v : s.basis())
    for (std::size_t i = 0; i < a.dim(); ++i) {
      GQVec b = a.basis(i);
      if (!s.contains(a.mul(b, v)) || !s.contains(a.mul(v, b))) return false;
    }
  return true;
}

Subspace product_space(const FinDimAlgebra& a, const Subspace& s, const Subspace& t) {
  Subspace out(a.dim());
  for (const auto& x : s.basis())
    for (const auto& y : t.basis()) out.insert(a.mul(x, y));
  return out;
}

}  // namespace strata::findim
