#include <algorithm>

#include "doctest.h"
#include "exact/error.hpp"
#include "exquo/exquo.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::exquo;
using groups::FiniteGroup;

namespace {

std::shared_ptr<const LatticeAction> perm_action(FiniteGroup g, std::optional<IntVec> kernel = std::nullopt) {
  return std::make_shared<const LatticeAction>(
      LatticeAction::permutation(std::make_shared<const FiniteGroup>(std::move(g)), std::move(kernel)));
}

std::vector<std::size_t> multiplicities(const ExtendedQuotient& eq) {
  std::vector<std::size_t> out;
  for (const auto& s : eq.strata) out.push_back(s.multiplicity());
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

std::vector<GQ> pt(std::initializer_list<std::int64_t> xs) {
  std::vector<GQ> p;
  for (auto x : xs) p.emplace_back(x);
  return p;
}

}  // namespace

TEST_CASE("extended quotients of permutation actions") {
  auto triv = extended_quotient(perm_action(FiniteGroup::from_permutations({{0, 1, 2}})));
  CHECK(multiplicities(triv) == std::vector<std::size_t>{1});
  CHECK(component_count(triv) == 1);

  auto s2 = extended_quotient(perm_action(FiniteGroup::symmetric(2)));
  CHECK(multiplicities(s2) == std::vector<std::size_t>{1, 2});
  CHECK(component_count(s2) == 2);
  CHECK(s2.strata[1].triv_label == 0u);

  auto v4 = extended_quotient(perm_action(FiniteGroup::klein_four()));
  CHECK(multiplicities(v4) == std::vector<std::size_t>{1, 2, 2, 2, 4});
  CHECK(component_count(v4) == 4);

  auto s3 = extended_quotient(perm_action(FiniteGroup::symmetric(3), IntVec{1, 1, 1}));
  CHECK(multiplicities(s3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(s3.strata[1].label_orbits == 2);
  // identity: 1; transposition: the fixed line; 3-cycle: three points permuted by Z = C_3 trivially
  CHECK(component_count(s3) == 1 + 1 + 3);
}

TEST_CASE("twisted extended quotient of the SL5(D) data") {
  auto action = perm_action(FiniteGroup::klein_four());
  auto eq = twisted_extended_quotient(action, groups::rho_quaternion());
  CHECK(multiplicities(eq) == std::vector<std::size_t>{1, 2, 2, 2, 1});
  CHECK(eq.strata[4].labels[0].dim == 2);
  CHECK(fiber_at(eq, pt({2, 3, 5, 7})).size() == 1);
  CHECK(fiber_at(eq, pt({2, 3, 2, 3})).size() == 2);
  CHECK(fiber_at(eq, pt({2, 2, 3, 3})).size() == 2);
  CHECK(fiber_at(eq, pt({5, 5, 5, 5})).size() == 1);
  auto plain = extended_quotient(action);
  CHECK(fiber_at(plain, pt({5, 5, 5, 5})).size() == 4);
  CHECK(code_of([&] { fiber_at(eq, pt({0, 1, 1, 1})); }) == ErrorCode::PointOffTorus);
  CHECK(code_of([&] { fiber_at(eq, pt({1, 1, 1})); }) == ErrorCode::PointOffTorus);

  CHECK(component_count(eq) == 4);
  CHECK(component_count(plain) == 4);

  auto trivial = twisted_extended_quotient(action, groups::Cocycle2::trivial(action->group()));
  CHECK(multiplicities(trivial) == multiplicities(plain));
  CHECK(component_count(trivial) == component_count(plain));

  auto bad = groups::rho_quaternion();
  bad.values[1][2] = -bad.values[1][2];
  CHECK(code_of([&] { twisted_extended_quotient(action, bad); }) == ErrorCode::InvalidCocycle);
}

TEST_CASE("fiber law against the discrete oracle") {
  std::vector<ExtendedQuotient> cases{
      extended_quotient(perm_action(FiniteGroup::symmetric(2))),
      extended_quotient(perm_action(FiniteGroup::symmetric(3), IntVec{1, 1, 1})),
      extended_quotient(perm_action(FiniteGroup::klein_four())),
      twisted_extended_quotient(perm_action(FiniteGroup::klein_four()), groups::rho_quaternion()),
  };
  for (const auto& eq : cases)
    for (std::int64_t m : {1, 2, 3, 4, 6, 12}) {
      auto rep = discrete_oracle(eq, m);
      CHECK_MESSAGE(rep.ok(), (rep.failures.empty() ? std::string() : rep.failures[0]));
    }
  auto one = discrete_oracle(cases[2], 1);
  CHECK(one.points == 1);
  CHECK(one.stratum_points.back() == 1);
  auto s2 = discrete_oracle(cases[0], 4);
  CHECK(s2.points == 16);
  CHECK(s2.stratum_points[1] == 4);
}

TEST_CASE("triv section") {
  auto eq = extended_quotient(perm_action(FiniteGroup::klein_four()));
  for (int k = 0; k < 30; ++k) {
    std::vector<GQ> p;
    for (int i = 0; i < 4; ++i) p.emplace_back(testing::rand_int(1, 3));
    auto s = stratum_at(eq, p);
    REQUIRE(eq.strata[s].triv_label.has_value());
    CHECK(eq.strata[s].labels[*eq.strata[s].triv_label].dim == 1);
    // the orbit of p lands in the same stratum
    for (int g = 0; g < 4; ++g) CHECK(stratum_at(eq, lattice::act(*eq.action, g, p)) == s);
  }
}

TEST_CASE("hh support for A_SL(3)") {
  auto action = perm_action(FiniteGroup::symmetric(3), IntVec{1, 1, 1});
  auto rep = hh_support(*action);
  REQUIRE(rep.size() == 3);
  for (const auto& h : rep) CHECK(h.oracle_ok);
  CHECK(rep[0].rank_fixed == 2);
  CHECK(rep[0].components == 1);
  CHECK(rep[0].centralizer_order == 6);
  auto cyc = std::find_if(rep.begin(), rep.end(), [](const HHClass& h) { return h.class_size == 2; });
  REQUIRE(cyc != rep.end());
  CHECK(cyc->rank_fixed == 0);
  CHECK(cyc->components == 3);
  CHECK(cyc->oracle_m == 3);
  CHECK(cyc->oracle_fixed == 3);
  CHECK(cyc->centralizer_order == 3);
  auto tr = std::find_if(rep.begin(), rep.end(), [](const HHClass& h) { return h.class_size == 3; });
  CHECK(tr->rank_fixed == 1);
  CHECK(tr->components == 1);
}

TEST_CASE("theta glue data") {
  auto s2 = extended_quotient(perm_action(FiniteGroup::symmetric(2)));
  const GQ v(2);
  auto data = theta_glue_data(s2, ThetaShift::gl2_iwahori(s2, v));
  REQUIRE(data.size() == 1);
  auto on = [&](const std::vector<Coset>& locus, const std::vector<GQ>& p) {
    return std::any_of(locus.begin(), locus.end(), [&](const Coset& c) { return c.contains(p); });
  };
  // (v^-1 z, v z) with z = 2
  CHECK(on(data[0].locus, pt({1, 4})));
  CHECK(on(data[0].locus, pt({4, 1})));
  CHECK(on(data[0].locus, {GQ(mpq_class(3, 2)), GQ(6)}));
  CHECK_FALSE(on(data[0].locus, pt({2, 2})));
  CHECK(data[0].minus.empty());

  auto zero = theta_glue_data(s2, ThetaShift::zero(s2));
  CHECK(on(zero[0].locus, pt({3, 3})));

  CHECK(code_of([&] { theta_glue_data(s2, ThetaShift{}); }) == ErrorCode::ShiftMissing);
  ThetaShift bad = ThetaShift::zero(s2);
  bad.by_stratum[0] = IntVec{1, 0};
  CHECK(code_of([&] { theta_glue_data(s2, bad); }) == ErrorCode::ValidationError);

  auto sl5 = twisted_extended_quotient(perm_action(FiniteGroup::klein_four()), groups::rho_quaternion());
  auto d5 = theta_glue_data(sl5, ThetaShift::zero(sl5));
  REQUIRE(d5.size() == 3);
  for (const auto& d : d5) {
    CHECK(on(d.minus, pt({5, 5, 5, 5})));
    CHECK_FALSE(on(d.minus, pt({2, 3, 2, 3})));
  }
  std::size_t hits = 0;
  for (const auto& d : d5) hits += on(d.locus, pt({2, 3, 2, 3}));
  CHECK(hits == 1);
}
