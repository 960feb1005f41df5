#include "findim/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "exact/error.hpp"

namespace strata::findim {

using exact::GQMatrix;

namespace {

std::optional<mpq_class> rationalize(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  if (std::abs(x) < 1e-11) return mpq_class(0);
  const std::int64_t max_den = 1000000;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double y = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(y);
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) < 1e-9 * std::max(1.0, std::abs(x))) {
      mpq_class r(static_cast<long>(p2), static_cast<unsigned long>(q2));
      r.canonicalize();
      return r;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = y - a;
    if (frac < 1e-15) break;
    y = 1.0 / frac;
  }
  return std::nullopt;
}

std::complex<double> to_complex(const GQ& x) { return {x.re().get_d(), x.im().get_d()}; }

GQVec from_coords(const Subspace& s, const GQVec& c) {
  GQVec v(s.ambient());
  for (std::size_t r = 0; r < c.size(); ++r) exact::axpy(v, c[r], s.basis()[r]);
  return v;
}

GQVec to_coords(const Subspace& s, const GQVec& v) {
  GQVec c(s.dim());
  for (std::size_t r = 0; r < s.dim(); ++r) c[r] = v[s.pivots()[r]];
  return c;
}

void split_into(const FinDimAlgebra& a, const Subspace& c, std::mt19937_64& gen, int depth, std::vector<GQVec>& out) {
  const std::size_t k = c.dim();
  if (k == 0) return;
  if (k == 1) {
    const GQVec& z = c.basis()[0];
    GQVec zz = a.mul(z, z);
    GQ mu = to_coords(c, zz)[0];
    if (mu.is_zero() || !(zz == from_coords(c, {mu})))
      fail(ErrorCode::SplitFieldError, "central subalgebra is not semisimple");
    GQVec e = z;
    GQ inv = mu.inverse();
    for (auto& x : e) x *= inv;
    out.push_back(std::move(e));
    return;
  }
  if (depth > 16) fail(ErrorCode::SplitFieldError, "central idempotent splitting did not converge");
  std::uniform_int_distribution<int> coef(1, 9);
  for (int attempt = 0; attempt < 12; ++attempt) {
    GQVec g(a.dim());
    for (const auto& z : c.basis()) exact::axpy(g, GQ(coef(gen)), z);
    GQMatrix lg(k, k);
    for (std::size_t r = 0; r < k; ++r) {
      GQVec col = to_coords(c, a.mul(g, c.basis()[r]));
      for (std::size_t s = 0; s < k; ++s) lg(s, r) = col[s];
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = 0; s < k; ++s)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = to_complex(lg(r, s));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) continue;
    std::vector<GQ> candidates;
    bool ok = true;
    for (Eigen::Index t = 0; t < solver.eigenvalues().size(); ++t) {
      auto lam = solver.eigenvalues()(t);
      auto re = rationalize(lam.real()), im = rationalize(lam.imag());
      if (!re || !im) {
        ok = false;
        break;
      }
      GQ cand(*re, *im);
      if (std::find(candidates.begin(), candidates.end(), cand) == candidates.end()) candidates.push_back(cand);
    }
    if (!ok) continue;
    std::sort(candidates.begin(), candidates.end());
    // exact verification: the eigenspaces must fill C and avoid 0
    std::vector<std::vector<GQVec>> spaces;
    std::size_t total = 0;
    for (const auto& lam : candidates) {
      if (lam.is_zero()) {
        ok = false;
        break;
      }
      GQMatrix shifted = lg;
      for (std::size_t r = 0; r < k; ++r) shifted(r, r) -= lam;
      auto ns = exact::nullspace(shifted);
      total += ns.size();
      spaces.push_back(std::move(ns));
    }
    if (!ok || total != k) continue;
    std::vector<GQVec> cols;
    for (const auto& sp : spaces) cols.insert(cols.end(), sp.begin(), sp.end());
    auto x = exact::solve(GQMatrix::from_columns(cols, k), to_coords(c, g));
    if (!x) continue;
    std::size_t pos = 0;
    for (std::size_t t = 0; t < candidates.size(); ++t) {
      GQVec comp(k);
      std::vector<GQVec> ambient;
      for (const auto& v : spaces[t]) {
        exact::axpy(comp, (*x)[pos++], v);
        ambient.push_back(from_coords(c, v));
      }
      if (spaces[t].size() == 1) {
        GQVec e = from_coords(c, comp);
        GQ inv = candidates[t].inverse();
        for (auto& y : e) y *= inv;
        out.push_back(std::move(e));
      } else {
        split_into(a, Subspace::span(a.dim(), ambient), gen, depth + 1, out);
      }
    }
    return;
  }
  fail(ErrorCode::SplitFieldError, "a central element has eigenvalues outside Q(i)");
}

}  // namespace

std::vector<std::size_t> Structure::block_dims() const {
  std::vector<std::size_t> d;
  for (const auto& b : blocks) d.push_back(b.n);
  std::sort(d.begin(), d.end());
  return d;
}

Subspace radical(const FinDimAlgebra& a, std::size_t* nilpotency) {
  const std::size_t d = a.dim();
  std::vector<GQ> tau(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [idx, c] : a.product(k, j))
        if (idx == j) tau[k] += c;
  GQMatrix m(d + 1, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      GQ t(0);
      for (const auto& [idx, c] : a.product(i, j))
        if (!tau[idx].is_zero()) t += c * tau[idx];
      m(j, i) = t;
    }
    m(d, i) = tau[i];
  }
  Subspace rad = Subspace::span(d, exact::nullspace(m));
  std::size_t k = 1;
  Subspace power = rad;
  while (power.dim() > 0) {
    power = product_space(a, power, rad);
    ++k;
    if (k > d + 1) fail(ErrorCode::ValidationError, "trace-form radical is not nilpotent; structure constants are inconsistent");
  }
  if (nilpotency) *nilpotency = k;
  return rad;
}

std::vector<GQVec> center(const FinDimAlgebra& a) {
  const std::size_t d = a.dim();
  std::vector<GQVec> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(a.basis(i));
  for (std::size_t i = 0; i < d && !v.empty(); ++i) {
    GQVec b = a.basis(i);
    std::vector<GQVec> cols;
    for (const auto& x : v) {
      GQVec c = a.mul(x, b);
      GQVec c2 = a.mul(b, x);
      for (std::size_t t = 0; t < d; ++t) c[t] -= c2[t];
      cols.push_back(std::move(c));
    }
    auto ns = exact::nullspace(GQMatrix::from_columns(cols, d));
    std::vector<GQVec> next;
    for (const auto& coeffs : ns) {
      GQVec z(d);
      for (std::size_t l = 0; l < v.size(); ++l) exact::axpy(z, coeffs[l], v[l]);
      next.push_back(std::move(z));
    }
    v = std::move(next);
  }
  return Subspace::span(d, v).basis();
}

std::vector<GQVec> split_commutative(const FinDimAlgebra& a, const std::vector<GQVec>& basis) {
  std::mt19937_64 gen(0xb10c);
  std::vector<GQVec> out;
  split_into(a, Subspace::span(a.dim(), basis), gen, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

Structure analyze(const FinDimAlgebra& a) {
  Structure s;
  s.radical = radical(a, &s.nilpotency);
  s.to_semisimple = std::make_shared<QuotientMap>(Subspace::whole(a.dim()), s.radical);
  s.semisimple = subquotient(a, *s.to_semisimple);
  const FinDimAlgebra& ss = s.semisimple;
  auto z = center(ss);
  s.center_dim = z.size();
  for (auto& e : split_commutative(ss, z)) {
    Subspace span(ss.dim());
    for (std::size_t j = 0; j < ss.dim(); ++j) span.insert(ss.mul(e, ss.basis(j)));
    auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(span.dim()))));
    if (n * n != span.dim()) fail(ErrorCode::SplitFieldError, "simple block is not a full matrix algebra over Q(i)");
    Block b;
    b.n = n;
    b.idempotent_lift = s.to_semisimple->lift(e);
    b.idempotent = std::move(e);
    s.blocks.push_back(std::move(b));
  }
  std::sort(s.blocks.begin(), s.blocks.end(), [](const Block& x, const Block& y) {
    return x.n != y.n ? x.n < y.n : x.idempotent < y.idempotent;
  });
  std::vector<GQVec> images;
  for (std::size_t j = 0; j < a.dim(); ++j) images.push_back(s.to_semisimple->coords(a.basis(j)));
  for (const auto& b : s.blocks) {
    std::vector<GQVec> cols;
    for (const auto& im : images) cols.push_back(ss.mul(im, b.idempotent));
    s.primitive_ideals.push_back(Subspace::span(a.dim(), exact::nullspace(GQMatrix::from_columns(cols, ss.dim()))));
  }
  return s;
}

std::vector<std::size_t> blocks(const FinDimAlgebra& a) { return analyze(a).block_dims(); }

std::vector<GQ> central_character(const FinDimAlgebra& a, const Structure& s, std::size_t block) {
  if (block >= s.blocks.size()) fail(ErrorCode::ValidationError, "block index out of range");
  const GQVec& e = s.blocks[block].idempotent;
  std::size_t k = 0;
  while (k < e.size() && e[k].is_zero()) ++k;
  std::vector<GQ> out;
  for (std::size_t m = 0; m < a.marked_central().size(); ++m) {
    GQVec v = s.semisimple.mul(s.to_semisimple->coords(a.marked_central()[m]), e);
    GQ lam = v[k] / e[k];
    GQVec expect = e;
    for (auto& x : expect) x *= lam;
    if (!(v == expect))
      fail(ErrorCode::NotScalar, "marked generator " + std::to_string(m) + " does not act by a scalar on block " + std::to_string(block));
    out.push_back(lam);
  }
  return out;
}

}  // namespace strata::findim
