#include "groups/cocycle.hpp"

#include <algorithm>

#include "exact/error.hpp"
#include "findim/analysis.hpp"

namespace strata::groups {

using exact::GQMatrix;

namespace {

bool is_fourth_root(const GQ& x) {
  return x == GQ(1) || x == GQ(-1) || x == GQ::i() || x == -GQ::i();
}

std::optional<GQMatrix> invert(const GQMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<exact::GQVec> cols;
  for (std::size_t k = 0; k < n; ++k) {
    auto x = exact::solve(m, exact::unit_vec(n, k));
    if (!x) return std::nullopt;
    cols.push_back(*x);
  }
  return GQMatrix::from_columns(cols, n);
}

}  // namespace

Cocycle2 Cocycle2::trivial(const FiniteGroup& g) {
  return {std::vector<std::vector<GQ>>(g.order(), std::vector<GQ>(g.order(), GQ(1)))};
}

bool verify_cocycle(const FiniteGroup& g, const Cocycle2& c, std::string* witness) {
  const auto n = static_cast<int>(g.order());
  auto fail_with = [&](const std::string& w) {
    if (witness) *witness = w;
    return false;
  };
  if (static_cast<int>(c.values.size()) != n) return fail_with("cocycle table has wrong size");
  for (const auto& row : c.values)
    if (static_cast<int>(row.size()) != n) return fail_with("cocycle table has wrong size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!is_fourth_root(c(a, b)))
        return fail_with("value at (" + g.name(a) + "," + g.name(b) + ") is not in {1,-1,i,-i}");
  const int e = g.identity();
  for (int a = 0; a < n; ++a)
    if (!c(e, a).is_one() || !c(a, e).is_one()) return fail_with("not normalized at " + g.name(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (!(c(a, b) * c(g.mul(a, b), k) == c(b, k) * c(a, g.mul(b, k))))
          return fail_with("cocycle identity fails on (" + g.name(a) + "," + g.name(b) + "," + g.name(k) + ")");
  return true;
}

Cocycle2 cocycle_from_projective(const FiniteGroup& g, const std::vector<GQMatrix>& rho) {
  const std::size_t n = g.order();
  if (rho.size() != n) fail(ErrorCode::InvalidCocycle, "need one matrix per group element");
  std::vector<GQMatrix> inverses;
  for (const auto& m : rho) {
    if (m.rows() != m.cols() || m.rows() != rho[0].rows()) fail(ErrorCode::InvalidCocycle, "matrices must be square of one size");
    auto inv = invert(m);
    if (!inv) fail(ErrorCode::InvalidCocycle, "projective representation matrix is singular");
    inverses.push_back(std::move(*inv));
  }
  Cocycle2 c{std::vector<std::vector<GQ>>(n, std::vector<GQ>(n))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      GQMatrix q = rho[a] * rho[b] * inverses[static_cast<std::size_t>(g.mul(static_cast<int>(a), static_cast<int>(b)))];
      GQ s = q(0, 0);
      GQMatrix scalar = GQMatrix::identity(q.rows());
      for (std::size_t k = 0; k < q.rows(); ++k) scalar(k, k) = s;
      if (!(q == scalar))
        fail(ErrorCode::InvalidCocycle, "rho(" + g.name(static_cast<int>(a)) + ") rho(" + g.name(static_cast<int>(b)) +
                                            ") is not a scalar multiple of rho of the product");
      c.values[a][b] = s;
    }
  return c;
}

std::vector<GQMatrix> rho_quaternion_matrices() {
  const GQ i = GQ::i();
  return {GQMatrix::from_rows({{GQ(1), GQ(0)}, {GQ(0), GQ(1)}}, 2), GQMatrix::from_rows({{i, GQ(0)}, {GQ(0), -i}}, 2),
          GQMatrix::from_rows({{GQ(0), GQ(1)}, {GQ(-1), GQ(0)}}, 2), GQMatrix::from_rows({{GQ(0), i}, {i, GQ(0)}}, 2)};
}

Cocycle2 rho_quaternion() { return cocycle_from_projective(FiniteGroup::klein_four(), rho_quaternion_matrices()); }

Cocycle2 restrict_cocycle(const Cocycle2& c, const Subgroup& h) {
  const std::size_t n = h.embedding.size();
  Cocycle2 r{std::vector<std::vector<GQ>>(n, std::vector<GQ>(n))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.values[a][b] = c(h.embedding[a], h.embedding[b]);
  return r;
}

bool is_regular(const FiniteGroup& g, const Cocycle2& c, int x) {
  for (int h : g.centralizer(x))
    if (!(c(x, h) == c(h, x))) return false;
  return true;
}

std::size_t regular_class_count(const FiniteGroup& g, const Cocycle2& c) {
  std::size_t k = 0;
  for (const auto& cls : conjugacy_classes(g))
    if (is_regular(g, c, cls.rep)) ++k;
  return k;
}

findim::FinDimAlgebra twisted_group_algebra(const FiniteGroup& g, const Cocycle2& c) {
  const std::size_t n = g.order();
  findim::FinDimAlgebra a(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      a.set_product(x, y, findim::FinDimAlgebra::Sparse{
                              {static_cast<std::size_t>(g.mul(static_cast<int>(x), static_cast<int>(y))), c.values[x][y]}});
  a.set_unit(exact::unit_vec(n, static_cast<std::size_t>(g.identity())));
  a.set_labels(g.names());
  return a;
}

std::vector<std::size_t> twisted_blocks(const FiniteGroup& g, const Cocycle2& c) {
  std::string why;
  if (!verify_cocycle(g, c, &why)) fail(ErrorCode::InvalidCocycle, why);
  std::vector<std::size_t> dims;
  try {
    dims = findim::blocks(twisted_group_algebra(g, c));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SplitFieldError) fail(ErrorCode::CharFieldError, e.what());
    throw;
  }
  if (dims.size() != regular_class_count(g, c))
    fail(ErrorCode::ValidationError, "twisted block count disagrees with the regular class count");
  return dims;
}

}  // namespace strata::groups
