#include "doctest.h"
#include "exact/error.hpp"
#include "findim/analysis.hpp"
#include "findim/spectrum.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::findim;

namespace {

FinDimAlgebra upper_triangular() {
  // basis E11, E12, E22
  FinDimAlgebra a(3);
  a.set_product(0, 0, FinDimAlgebra::Sparse{{0, GQ(1)}});
  a.set_product(0, 1, FinDimAlgebra::Sparse{{1, GQ(1)}});
  a.set_product(1, 2, FinDimAlgebra::Sparse{{1, GQ(1)}});
  a.set_product(2, 2, FinDimAlgebra::Sparse{{2, GQ(1)}});
  return a;
}

FinDimAlgebra cyclic_group_algebra(std::size_t n) {
  FinDimAlgebra a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.set_product(i, j, FinDimAlgebra::Sparse{{(i + j) % n, GQ(1)}});
  return a;
}

FinDimAlgebra s3_group_algebra() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FinDimAlgebra a(6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<int> c(3);
      for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] = perms[i][static_cast<std::size_t>(perms[j][static_cast<std::size_t>(k)])];
      auto idx = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      a.set_product(i, j, FinDimAlgebra::Sparse{{idx, GQ(1)}});
    }
  return a;
}

// Same algebra in the basis b'_i = sum_k P_ki b_k.
FinDimAlgebra change_basis(const FinDimAlgebra& a, const exact::GQMatrix& p) {
  const std::size_t d = a.dim();
  std::vector<GQVec> cols;
  for (std::size_t i = 0; i < d; ++i) cols.push_back(p.col(i));
  FinDimAlgebra out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto x = exact::solve(p, a.mul(cols[i], cols[j]));
      REQUIRE(x.has_value());
      out.set_product(i, j, *x);
    }
  return out;
}

exact::GQMatrix random_invertible(std::size_t d) {
  for (;;) {
    exact::GQMatrix p(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) p(r, c) = GQ(testing::rand_int(-2, 2));
    if (exact::rank(p) == d) return p;
  }
}

}  // namespace

TEST_CASE("radical") {
  CHECK(radical(FinDimAlgebra::matrix_algebra(2)).dim() == 0);
  std::size_t nil = 0;
  Subspace r = radical(upper_triangular(), &nil);
  CHECK(r.dim() == 1);
  CHECK(r.contains(exact::unit_vec(3, 1)));
  CHECK(nil == 2);
  // the augmentation-free nilpotent algebra x^2 = y, x^3 = 0 (no unit)
  FinDimAlgebra n(2);
  n.set_product(0, 0, FinDimAlgebra::Sparse{{1, GQ(1)}});
  CHECK(radical(n).dim() == 2);
  CHECK(analyze(n).blocks.empty());
}

TEST_CASE("block census") {
  CHECK(blocks(FinDimAlgebra::matrix_algebra(2)) == std::vector<std::size_t>{2});
  FinDimAlgebra cc = FinDimAlgebra::direct_sum(FinDimAlgebra::matrix_algebra(1), FinDimAlgebra::matrix_algebra(1));
  CHECK(blocks(cc) == std::vector<std::size_t>{1, 1});
  CHECK(blocks(upper_triangular()) == std::vector<std::size_t>{1, 1});
  CHECK(blocks(cyclic_group_algebra(4)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(blocks(cyclic_group_algebra(2)) == std::vector<std::size_t>{1, 1});
  CHECK(blocks(s3_group_algebra()) == std::vector<std::size_t>{1, 1, 2});
  CHECK_THROWS_WITH_AS(blocks(cyclic_group_algebra(3)), doctest::Contains("Q(i)"), Error);
  try {
    blocks(cyclic_group_algebra(3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SplitFieldError);
  }
}

TEST_CASE("block census is basis independent and sums squares") {
  for (int trial = 0; trial < 4; ++trial) {
    FinDimAlgebra a = FinDimAlgebra::direct_sum(FinDimAlgebra::matrix_algebra(2),
                                                FinDimAlgebra::direct_sum(upper_triangular(), FinDimAlgebra::matrix_algebra(1)));
    FinDimAlgebra b = change_basis(a, random_invertible(a.dim()));
    CHECK(b.is_associative());
    Structure s = analyze(b);
    CHECK(s.block_dims() == std::vector<std::size_t>{1, 1, 1, 2});
    CHECK(s.radical.dim() == 1);
    std::size_t sq = 0;
    for (auto n : s.block_dims()) sq += n * n;
    CHECK(sq == b.dim() - s.radical.dim());
    CHECK(s.center_dim == s.blocks.size());
    // primitive ideals have codimension n^2 + dim rad... relative to the semisimple part
    for (std::size_t i = 0; i < s.blocks.size(); ++i)
      CHECK(s.primitive_ideals[i].dim() == b.dim() - s.blocks[i].n * s.blocks[i].n);
  }
}

TEST_CASE("central character") {
  FinDimAlgebra cc = FinDimAlgebra::direct_sum(FinDimAlgebra::matrix_algebra(1), FinDimAlgebra::matrix_algebra(1));
  cc.set_marked_central({GQVec{GQ(2), GQ(5)}});
  Structure s = analyze(cc);
  std::vector<GQ> got;
  for (std::size_t i = 0; i < 2; ++i) got.push_back(central_character(cc, s, i)[0]);
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<GQ>{GQ(2), GQ(5)});
  FinDimAlgebra m = FinDimAlgebra::matrix_algebra(2);
  m.set_marked_central({GQVec{GQ(1), GQ(1), GQ(0), GQ(0)}});  // E11 + E12: not scalar
  Structure sm = analyze(m);
  try {
    central_character(m, sm, 0);
    FAIL("expected NotScalar");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotScalar);
  }
}

TEST_CASE("spectrum preserving maps") {
  FinDimAlgebra m2 = FinDimAlgebra::matrix_algebra(2);
  CHECK(verify_spectrum_preserving(m2, m2, AlgebraMap::identity(4)).preserving);
  FinDimAlgebra s3 = s3_group_algebra();
  CHECK(verify_spectrum_preserving(s3, s3, AlgebraMap::identity(6)).preserving);
  // C -> C + C diagonally: one source primitive, two targets
  FinDimAlgebra c = FinDimAlgebra::matrix_algebra(1);
  FinDimAlgebra cc = FinDimAlgebra::direct_sum(c, c);
  AlgebraMap diag{{GQVec{GQ(1), GQ(1)}}};
  auto rep = verify_spectrum_preserving(c, cc, diag);
  CHECK_FALSE(rep.preserving);
  CHECK(rep.scope == "fiberwise");
  CHECK_FALSE(rep.witness.empty());
  // upper triangular -> diagonal quotient is spectrum preserving
  AlgebraMap proj{{GQVec{GQ(1), GQ(0)}, GQVec{GQ(0), GQ(0)}, GQVec{GQ(0), GQ(1)}}};
  CHECK(verify_spectrum_preserving(upper_triangular(), cc, proj).preserving);
  // not multiplicative
  AlgebraMap bad{{GQVec{GQ(2), GQ(0)}, GQVec{GQ(0), GQ(0)}, GQVec{GQ(0), GQ(1)}}};
  try {
    verify_spectrum_preserving(upper_triangular(), cc, bad);
    FAIL("expected NotAMorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAMorphism);
  }
}

TEST_CASE("spectrum preserving with filtrations") {
  // C + C -> M2 + C, (x, y) -> diag(x, y) + y
  FinDimAlgebra c = FinDimAlgebra::matrix_algebra(1);
  FinDimAlgebra cc = FinDimAlgebra::direct_sum(c, c);
  FinDimAlgebra m = FinDimAlgebra::direct_sum(FinDimAlgebra::matrix_algebra(2), c);
  AlgebraMap f{{GQVec{GQ(1), GQ(0), GQ(0), GQ(0), GQ(0)}, GQVec{GQ(0), GQ(0), GQ(0), GQ(1), GQ(1)}}};
  CHECK_FALSE(verify_spectrum_preserving(cc, m, f).preserving);
  Filtration fa{{Subspace::span(2, {exact::unit_vec(2, 0)}), Subspace::whole(2)}};
  Filtration fb{{Subspace::span(5, {exact::unit_vec(5, 0), exact::unit_vec(5, 1), exact::unit_vec(5, 2), exact::unit_vec(5, 3)}),
                 Subspace::whole(5)}};
  auto rep = verify_spectrum_preserving(cc, m, f, fa, fb);
  CHECK(rep.preserving);
  CHECK(rep.source_blocks.size() == 2);
  // swapping the roles breaks f(I_1) inside J_1
  Filtration fb2{{Subspace::span(5, {exact::unit_vec(5, 4)}), Subspace::whole(5)}};
  try {
    verify_spectrum_preserving(cc, m, f, fa, fb2);
    FAIL("expected FiltrationNotRespected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FiltrationNotRespected);
  }
}

TEST_CASE("diagonal embedding") {
  CHECK(diag_embedding_check(FinDimAlgebra::matrix_algebra(1), 3));
  FinDimAlgebra c = FinDimAlgebra::matrix_algebra(1);
  SpectrumReport rep;
  CHECK(diag_embedding_check(FinDimAlgebra::direct_sum(c, c), 2, &rep));
  std::vector<std::size_t> t = rep.target_blocks[0];
  std::sort(t.begin(), t.end());
  CHECK(t == std::vector<std::size_t>{2, 2});
  CHECK(diag_embedding_check(FinDimAlgebra::matrix_algebra(2), 2, &rep));
  CHECK(rep.target_blocks[0] == std::vector<std::size_t>{4});
  CHECK(diag_embedding_check(upper_triangular(), 2));
  try {
    diag_embedding_check(FinDimAlgebra::matrix_algebra(4), 3);
    FAIL("expected OrbitTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrbitTooLarge);
  }
}
