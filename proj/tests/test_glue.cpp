#include "doctest.h"
#include "exact/error.hpp"
#include "glue/glue.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::glue;
using exact::GQVec;
using exact::IntMatrix;
using groups::FiniteGroup;

namespace {

std::vector<GQ> pt(std::initializer_list<std::int64_t> xs) {
  std::vector<GQ> p;
  for (auto x : xs) p.emplace_back(x);
  return p;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

LinearSubvariety eq1(std::vector<std::int64_t> a, std::int64_t b) {
  GQVec v;
  for (auto x : a) v.emplace_back(x);
  return {{v}, {GQ(b)}};
}

Base affine(int n) { return {Base::Kind::Affine, n, {}, std::nullopt, ""}; }

GluedSpace doubled_line() { return build_glued(affine(1), {Doubling{Locus{{eq1({1}, 0)}}, {}, 1}}); }
GluedSpace line() { return build_glued(affine(1), {}); }

std::shared_ptr<const lattice::LatticeAction> perm_action(FiniteGroup g) {
  return std::make_shared<const lattice::LatticeAction>(
      lattice::LatticeAction::permutation(std::make_shared<const FiniteGroup>(std::move(g))));
}

}  // namespace

TEST_CASE("multiplicity of glued spaces") {
  auto s = doubled_line();
  CHECK(s.copies() == 2);
  CHECK(multiplicity_at(s, pt({0})) == 2);
  CHECK(multiplicity_at(s, pt({1})) == 1);
  CHECK(multiplicity_at(line(), pt({0})) == 1);
  CHECK(code_of([&] { multiplicity_at(s, pt({0, 1})); }) == ErrorCode::PointOffBase);
  Base torus{Base::Kind::Torus, 1, {}, std::nullopt, ""};
  CHECK(code_of([&] { build_glued(torus, {Doubling{Locus{{eq1({1}, 0)}}, {}, 1}}); }) == ErrorCode::LocusOffBase);
  CHECK(code_of([&] { build_glued(affine(1), {Doubling{Locus{{PointSet{{pt({1, 2})}}}}, {}, 1}}); }) == ErrorCode::LocusOffBase);
  CHECK(is_valid_point(s, {1, pt({0})}));
  CHECK_FALSE(is_valid_point(s, {1, pt({1})}));
}

TEST_CASE("closure in the doubled line") {
  auto s = doubled_line();
  SetDescriptor punctured{{0}, Locus{{LinearSubvariety{}}}, Locus{{eq1({1}, 0)}}};
  CHECK(closure_contains(s, punctured, {0, pt({0})}));
  CHECK(closure_contains(s, punctured, {1, pt({0})}));
  CHECK(closure_contains(s, punctured, {0, pt({5})}));
  SetDescriptor origin1{{0}, Locus{{PointSet{{pt({0})}}}}, {}};
  SetDescriptor origin2{{1}, Locus{{PointSet{{pt({0})}}}}, {}};
  CHECK(closure_contains(s, origin1, {0, pt({0})}));
  CHECK_FALSE(closure_contains(s, origin1, {1, pt({0})}));
  CHECK_FALSE(closure_contains(s, origin2, {0, pt({0})}));
  CHECK(closure_contains(s, origin2, {1, pt({0})}));
  // monotone: enlarging the set keeps closure points
  SetDescriptor both{{0, 1}, Locus{{PointSet{{pt({0})}}}}, {}};
  CHECK(closure_contains(s, both, {0, pt({0})}));
  CHECK(closure_contains(s, both, {1, pt({0})}));
  SetDescriptor whole{{0}, Locus{{LinearSubvariety{}}}, {}};
  for (std::int64_t x : {-1, 0, 3}) CHECK(closure_contains(s, whole, {0, pt({x})}));
  CHECK(code_of([&] { closure_contains(s, punctured, {1, pt({2})}); }) == ErrorCode::PointOffBase);
}

TEST_CASE("closure in the product of doubled lines") {
  ProductSpace p{{doubled_line(), doubled_line()}};
  ProductSet diagonal{{{0, 0}}, Locus{{eq1({1, -1}, 0)}}, Locus{{eq1({1, 0}, 0)}}};
  for (std::size_t a : {0u, 1u})
    for (std::size_t b : {0u, 1u}) CHECK(closure_contains(p, diagonal, {{a, b}, pt({0, 0})}));
  ProductSet axis{{{0, 0}}, Locus{{eq1({0, 1}, 0)}}, Locus{{eq1({1, 0}, 0)}}};
  // the punctured axis {y = 0, x != 0} meets only the base sheet of the second factor
  CHECK(closure_contains(p, axis, {{1, 0}, pt({0, 0})}));
  CHECK_FALSE(closure_contains(p, axis, {{0, 1}, pt({0, 0})}));
}

TEST_CASE("distinguishing invariants") {
  // Prim(A) = line with the origin doubled, against X disjoint union Y
  SpaceModel prim{"Prim(A)", {doubled_line()}};
  Base y = affine(1);
  y.support = Locus{{eq1({1}, 0)}};
  SpaceModel xy{"X u Y", {line(), build_glued(y, {})}};
  auto c = distinguishing_invariants(prim, xy);
  CHECK(c.verdict == "not homeomorphic");
  CHECK(c.first.components == 1);
  CHECK(c.second.components == 2);
  CHECK(c.first.non_separated_pair);
  CHECK_FALSE(c.second.non_separated_pair);
  CHECK(distinguishing_invariants(prim, prim).verdict == "indistinguishable at this resolution");
  auto d = distinguishing_invariants(prim, SpaceModel{"line", {line()}});
  CHECK(d.verdict == "not homeomorphic");
  CHECK(std::find(d.differing.begin(), d.differing.end(), "multiplicity profile") != d.differing.end());
  // doubling everything gives a second component
  SpaceModel two{"two lines", {build_glued(affine(1), {Doubling{Locus{{LinearSubvariety{}}}, {}, 1}})}};
  CHECK(model_invariants(two).components == 2);
  CHECK_FALSE(model_invariants(two).non_separated_pair);
}

TEST_CASE("loci") {
  Base b2{Base::Kind::Torus, 2, {}, std::nullopt, ""};
  Coset diag{IntMatrix{{1}, {-1}}, {GQ(1)}};
  Coset z1_is_2{IntMatrix{{1}, {0}}, {GQ(2)}};
  Coset point{IntMatrix{{1, 0}, {0, 1}}, {GQ(2), GQ(2)}};
  CHECK(piece_within(b2, point, Locus{{diag}}));
  CHECK_FALSE(piece_within(b2, diag, Locus{{z1_is_2}}));
  CHECK(pieces_meet(b2, diag, z1_is_2));
  Coset sq{IntMatrix{{2}, {0}}, {GQ(4)}};
  CHECK(piece_within(b2, z1_is_2, Locus{{sq}}));
  CHECK_FALSE(piece_within(b2, sq, Locus{{z1_is_2}}));
  Coset clash{IntMatrix{{1, 2}, {0, 0}}, {GQ(2), GQ(3)}};
  CHECK_FALSE(pieces_meet(b2, clash, diag));
  CHECK(Locus{{diag, z1_is_2}}.str() == "{z1 = z2} U {z1 = 2}");
}

TEST_CASE("glued models from theta data") {
  auto s2 = exquo::extended_quotient(perm_action(FiniteGroup::symmetric(2)));
  const GQ v(3);
  auto gl2 = from_theta(s2, exquo::theta_glue_data(s2, exquo::ThetaShift::gl2_iwahori(s2, v)));
  CHECK(multiplicity_at(gl2, {GQ(mpq_class(2, 3)), GQ(6)}) == 2);
  CHECK(multiplicity_at(gl2, {GQ(6), GQ(mpq_class(2, 3))}) == 2);
  CHECK(multiplicity_at(gl2, pt({2, 2})) == 1);
  CHECK(multiplicity_at(gl2, pt({2, 5})) == 1);

  auto v4 = perm_action(FiniteGroup::klein_four());
  for (bool twisted : {false, true}) {
    auto eq = twisted ? exquo::twisted_extended_quotient(v4, groups::rho_quaternion()) : exquo::extended_quotient(v4);
    auto model = from_theta(eq, exquo::theta_glue_data(eq, exquo::ThetaShift::zero(eq)));
    for (int k = 0; k < 40; ++k) {
      std::vector<GQ> p;
      for (int i = 0; i < 4; ++i) p.emplace_back(testing::rand_int(1, 3));
      CHECK(multiplicity_at(model, p) == exquo::fiber_at(eq, p).size());
    }
    if (twisted) {
      CHECK(multiplicity_at(model, pt({2, 3, 2, 3})) == 2);
      CHECK(multiplicity_at(model, pt({5, 5, 5, 5})) == 1);
      CHECK(multiplicity_at(model, pt({2, 3, 5, 7})) == 1);
    }
  }
}
