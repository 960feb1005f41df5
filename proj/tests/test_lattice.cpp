#include <algorithm>

#include "doctest.h"
#include "exact/error.hpp"
#include "lattice/action.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::lattice;
using groups::FiniteGroup;

namespace {

bool divisibility_chain(const SmithForm& s) {
  auto d = s.diagonal();
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] < 0) return false;
    if (k + 1 < d.size() && d[k] == 0 && d[k + 1] != 0) return false;
    if (k + 1 < d.size() && d[k] != 0 && d[k + 1] % d[k] != 0) return false;
  }
  for (std::size_t r = 0; r < s.d.rows(); ++r)
    for (std::size_t c = 0; c < s.d.cols(); ++c)
      if (r != c && s.d(r, c) != 0) return false;
  return true;
}

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

LatticeAction v4_action() { return LatticeAction::permutation(share(FiniteGroup::klein_four())); }
LatticeAction s2_action() { return LatticeAction::permutation(share(FiniteGroup::symmetric(2))); }
LatticeAction s3_sl_action() { return LatticeAction::permutation(share(FiniteGroup::symmetric(3)), IntVec{1, 1, 1}); }

std::vector<RootPoint> all_points(const LatticeAction& a, std::int64_t m) {
  std::vector<RootPoint> out;
  const auto n = static_cast<std::size_t>(a.rank());
  IntVec idx(n, 0);
  for (;;) {
    RootPoint p{m, idx};
    if (on_torus(a, p)) out.push_back(p);
    std::size_t i = n;
    while (i-- > 0) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

// number of points of (mu_m)^n fixed by every element of h
std::int64_t fixed_count(const LatticeAction& a, const std::vector<int>& h, std::int64_t m) {
  std::int64_t k = 0;
  for (const auto& p : all_points(a, m)) {
    auto st = stabilizer(a, p);
    if (std::includes(st.begin(), st.end(), h.begin(), h.end())) ++k;
  }
  return k;
}

}  // namespace

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));
  s = smith_normal_form(IntMatrix{{-1, 1}, {1, -1}});
  CHECK(s.diagonal() == std::vector<std::int64_t>{1, 0});
  s = smith_normal_form(IntMatrix{{-2}});
  CHECK(s.diagonal() == std::vector<std::int64_t>{2});
  s = smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(s.diagonal() == std::vector<std::int64_t>{2, 6, 12});
}

TEST_CASE("smith normal form contract on random matrices") {
  for (int trial = 0; trial < 200; ++trial) {
    auto rows = static_cast<std::size_t>(testing::rand_int(1, 5));
    auto cols = static_cast<std::size_t>(testing::rand_int(1, 5));
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = testing::rand_int(-6, 6);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(std::llabs(s.u.determinant()) == 1);
    CHECK(std::llabs(s.v.determinant()) == 1);
    CHECK(divisibility_chain(s));
    // the Hermite basis spans the same lattice as the columns: equal invariants
    auto h = column_hermite_basis(m);
    CHECK(quotient_invariants(IntMatrix::from_columns(h, rows)) == quotient_invariants(m));
    CHECK(h.size() == s.rank);
  }
}

TEST_CASE("fixed subtori") {
  LatticeAction v4 = v4_action();
  auto t = fixed_subtorus(v4, {0});
  CHECK(t.rank_fixed == 4);
  CHECK(t.component_count == 1);
  int e2 = v4.group().find("e2");
  auto t1 = fixed_subtorus(v4, {0, e2});
  CHECK(t1.rank_fixed == 2);
  CHECK(t1.component_count == 1);
  CHECK(t1.equations() == std::vector<std::string>{"z1 = z3", "z2 = z4"});
  CHECK(lies_on(t1, std::vector<GQ>{2, 3, 2, 3}));
  CHECK_FALSE(lies_on(t1, std::vector<GQ>{2, 3, 3, 2}));

  auto inv_group = share(FiniteGroup::cyclic(2));
  LatticeAction inv(1, std::nullopt, inv_group, {IntMatrix::identity(1), IntMatrix{{-1}}});
  auto ti = fixed_subtorus(inv, {0, 1});
  CHECK(ti.rank_fixed == 0);
  CHECK(ti.component_count == 2);
  CHECK(fixed_count(inv, {0, 1}, 12) == 2);  // z = +-1

  try {
    fixed_subtorus(v4, {0, 1, 2});
    FAIL("expected NotASubgroup");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotASubgroup);
  }
}

TEST_CASE("component counts agree with fixed point counts") {
  for (const auto& a : {v4_action(), s2_action(), s3_sl_action()}) {
    for (const auto& h : a.group().all_subgroups()) {
      auto t = fixed_subtorus(a, h);
      for (std::int64_t m : {4, 6, 12}) {
        bool divisible = std::all_of(t.torsion.begin(), t.torsion.end(), [&](std::int64_t d) { return m % d == 0; });
        if (!divisible) continue;
        std::int64_t power = 1;
        for (std::size_t k = 0; k < t.rank_fixed; ++k) power *= m;
        CHECK(fixed_count(a, h, m) == power * t.component_count);
        CHECK(static_cast<std::int64_t>(torsion_points(t, m).size()) == power * t.component_count);
      }
    }
  }
  // the 3-cycle on the SL3 torus: three isolated points
  LatticeAction a = s3_sl_action();
  auto cyc = a.group().generated({a.group().find("[2,3,1]")});
  auto t = fixed_subtorus(a, cyc);
  CHECK(t.rank_fixed == 0);
  CHECK(t.torsion == std::vector<std::int64_t>{3});
}

TEST_CASE("action validation") {
  auto g = share(FiniteGroup::cyclic(2));
  CHECK_THROWS_AS(LatticeAction(1, std::nullopt, g, {IntMatrix::identity(1), IntMatrix{{2}}}), Error);
  CHECK_THROWS_AS(LatticeAction(2, std::nullopt, g, {IntMatrix::identity(2), IntMatrix{{1, 1}, {0, 1}}}), Error);
  CHECK_THROWS_AS(LatticeAction(2, IntVec{1, 0}, g, {IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}}), Error);
}

TEST_CASE("stratification") {
  LatticeAction triv = LatticeAction::permutation(share(FiniteGroup::from_permutations({{0, 1}})));
  CHECK(stratify(triv).size() == 1);

  auto s2 = stratify(s2_action());
  REQUIRE(s2.size() == 2);
  CHECK(s2[0].carrier.rank_fixed == 2);
  CHECK(s2[1].carrier.rank_fixed == 1);
  CHECK(s2[1].carrier.equations() == std::vector<std::string>{"z1 = z2"});
  CHECK(s2[0].excluded == std::vector<std::size_t>{1});

  LatticeAction v4 = v4_action();
  auto st = stratify(v4);
  REQUIRE(st.size() == 5);
  CHECK(st[0].stabilizer.size() == 1);
  CHECK(st[0].carrier.rank_fixed == 4);
  for (int k = 1; k <= 3; ++k) {
    CHECK(st[static_cast<std::size_t>(k)].stabilizer.size() == 2);
    CHECK(st[static_cast<std::size_t>(k)].carrier.rank_fixed == 2);
    CHECK(st[static_cast<std::size_t>(k)].excluded == std::vector<std::size_t>{4});
  }
  CHECK(st[4].stabilizer.size() == 4);
  CHECK(st[4].carrier.rank_fixed == 1);
  CHECK(intersect(intersect(st[1].carrier, st[2].carrier), st[3].carrier) == st[4].carrier);
  CHECK(intersect(st[1].carrier, st[2].carrier) == st[4].carrier);
  CHECK(contains(st[1].carrier, st[4].carrier));
  CHECK_FALSE(contains(st[4].carrier, st[1].carrier));

  auto s3 = stratify(s3_sl_action());
  // free, transposition lines, and the three central points
  REQUIRE(s3.size() == 3);
  CHECK(s3[1].stabilizer.size() == 2);
  CHECK(s3[1].conjugates == 3);
  CHECK(s3[2].stabilizer.size() == 6);
  CHECK(s3[2].carrier.component_count == 3);

  StratifyOptions small;
  small.max_group_order = 3;
  CHECK_THROWS_AS(stratify(v4, small), Error);
}

TEST_CASE("strata partition the torsion points") {
  for (const auto& a : {v4_action(), s2_action(), s3_sl_action()}) {
    auto strata = stratify(a);
    StratumMembership member(a, strata);
    for (const auto& p : all_points(a, 12)) {
      std::size_t hits = 0, which = 0;
      for (std::size_t k = 0; k < strata.size(); ++k)
        if (member.contains(k, p)) {
          ++hits;
          which = k;
        }
      CHECK(hits == 1);
      CHECK(which == stratum_of(a, strata, stabilizer(a, p)));
    }
  }
}
