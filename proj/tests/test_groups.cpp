#include <algorithm>

#include "doctest.h"
#include "exact/error.hpp"
#include "groups/cocycle.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::groups;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;  // sentinel: nothing thrown
}

// Multiplicity of each irreducible in the permutation character must be a
// nonnegative integer.
bool permutation_character_decomposes(const FiniteGroup& g, const CharacterTable& t) {
  for (std::size_t chi = 0; chi < t.characters.size(); ++chi) {
    GQ s(0);
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      const auto& p = g.permutations()[static_cast<std::size_t>(t.classes[c].rep)];
      std::int64_t fixed = 0;
      for (std::size_t i = 0; i < p.size(); ++i) fixed += p[i] == static_cast<int>(i);
      s += GQ(static_cast<std::int64_t>(t.classes[c].members.size()) * fixed) * t.characters[chi][c].conj();
    }
    s /= GQ(static_cast<std::int64_t>(g.order()));
    if (!s.is_real() || s.re().get_den() != 1 || sgn(s.re()) < 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("builders and tables") {
  CHECK(FiniteGroup::trivial().order() == 1);
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(FiniteGroup::quaternion().order() == 8);
  FiniteGroup v = FiniteGroup::klein_four();
  CHECK(v.mul(v.find("e1"), v.find("e2")) == v.find("e3"));
  CHECK(v.permutations()[1] == std::vector<int>{1, 0, 3, 2});
  CHECK(code_of([] { FiniteGroup({{0, 1}, {0, 1}}); }) == ErrorCode::ValidationError);
  // non-associative loop of order 5
  std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(code_of([&] { FiniteGroup g(loop); }) == ErrorCode::ValidationError);
  FiniteGroup q = FiniteGroup::quaternion();
  int i = q.find("i"), j = q.find("j"), k = q.find("k");
  CHECK(q.mul(i, j) == k);
  CHECK(q.mul(j, i) == q.find("-k"));
  CHECK(q.element_order(i) == 4);
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(FiniteGroup::trivial()).size() == 1);
  CHECK(conjugacy_classes(FiniteGroup::klein_four()).size() == 4);
  CHECK(conjugacy_classes(FiniteGroup::symmetric(3)).size() == 3);
  CHECK(conjugacy_classes(FiniteGroup::symmetric(5)).size() == 7);
  CHECK(conjugacy_classes(FiniteGroup::quaternion()).size() == 5);
  FiniteGroup s4 = FiniteGroup::symmetric(4);
  // class sizes sum to the order and divide it
  std::size_t total = 0;
  for (const auto& c : conjugacy_classes(s4)) {
    total += c.members.size();
    CHECK(24 % c.members.size() == 0);
    CHECK(c.members.size() * s4.centralizer(c.rep).size() == 24);
  }
  CHECK(total == 24);
}

TEST_CASE("subgroups") {
  CHECK(FiniteGroup::klein_four().all_subgroups().size() == 5);
  CHECK(FiniteGroup::symmetric(3).all_subgroups().size() == 6);
  CHECK(FiniteGroup::symmetric(4).all_subgroups().size() == 30);
  CHECK(FiniteGroup::quaternion().all_subgroups().size() == 6);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(code_of([&] { make_subgroup(s3, {0, 1}); }) == ErrorCode::Overflow);
  CHECK(code_of([&] { make_subgroup(s3, {1, 2}); }) == ErrorCode::NotASubgroup);
}

TEST_CASE("character tables") {
  auto t1 = character_table(FiniteGroup::trivial());
  CHECK(t1.characters == std::vector<std::vector<GQ>>{{GQ(1)}});
  auto tv = character_table(FiniteGroup::klein_four());
  CHECK(tv.dims == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(tv.characters[0] == std::vector<GQ>{1, 1, 1, 1});
  CHECK(character_table(FiniteGroup::symmetric(3)).dims == std::vector<std::size_t>{1, 1, 2});
  CHECK(character_table(FiniteGroup::symmetric(4)).dims == std::vector<std::size_t>{1, 1, 2, 3, 3});
  CHECK(character_table(FiniteGroup::symmetric(5)).dims == std::vector<std::size_t>{1, 1, 4, 4, 5, 5, 6});
  CHECK(character_table(FiniteGroup::quaternion()).dims == std::vector<std::size_t>{1, 1, 1, 1, 2});
  auto t4 = character_table(FiniteGroup::cyclic(4));
  bool has_i = false;
  for (const auto& row : t4.characters) has_i = has_i || std::find(row.begin(), row.end(), GQ::i()) != row.end();
  CHECK(has_i);
  CHECK(code_of([] { character_table(FiniteGroup::cyclic(3)); }) == ErrorCode::CharFieldError);
  for (int n = 1; n <= 5; ++n) {
    FiniteGroup s = FiniteGroup::symmetric(n);
    auto t = character_table(s);
    CHECK(check_orthogonality(s, t));
    CHECK(t.characters.size() == t.classes.size());
    CHECK(permutation_character_decomposes(s, t));
  }
  for (const auto& g : {FiniteGroup::quaternion(), FiniteGroup::cyclic(4), FiniteGroup::klein_four()})
    CHECK(check_orthogonality(g, character_table(g)));
}

TEST_CASE("cocycles") {
  FiniteGroup v = FiniteGroup::klein_four();
  CHECK(verify_cocycle(v, Cocycle2::trivial(v)));
  Cocycle2 c = rho_quaternion();
  CHECK(verify_cocycle(v, c));
  const int e1 = v.find("e1"), e2 = v.find("e2");
  CHECK(c(e1, e2) == GQ(1));
  CHECK(c(e2, e1) == GQ(-1));
  CHECK(c(e1, e1) == GQ(-1));
  for (const auto& row : c.values)
    for (const auto& x : row) CHECK((x == GQ(1) || x == GQ(-1)));
  Cocycle2 flipped = c;
  flipped.values[1][2] = -flipped.values[1][2];
  std::string why;
  CHECK_FALSE(verify_cocycle(v, flipped, &why));
  CHECK(why.find("cocycle identity") != std::string::npos);
  CHECK(code_of([&] { twisted_blocks(v, flipped); }) == ErrorCode::InvalidCocycle);
  auto bad = rho_quaternion_matrices();
  bad[3] = exact::GQMatrix::from_rows({{GQ(1), GQ(1)}, {GQ(0), GQ(1)}}, 2);
  CHECK(code_of([&] { cocycle_from_projective(v, bad); }) == ErrorCode::InvalidCocycle);
}

TEST_CASE("twisted blocks") {
  FiniteGroup v = FiniteGroup::klein_four();
  CHECK(twisted_blocks(v, Cocycle2::trivial(v)) == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(twisted_blocks(v, rho_quaternion()) == std::vector<std::size_t>{2});
  CHECK(regular_class_count(v, rho_quaternion()) == 1);
  for (int k = 1; k <= 3; ++k) {
    Subgroup h = make_subgroup(v, {0, k});
    CHECK(twisted_blocks(h.group, restrict_cocycle(rho_quaternion(), h)) == std::vector<std::size_t>{1, 1});
  }
}

TEST_CASE("coboundaries do not change the block census") {
  for (const auto& g : {FiniteGroup::klein_four(), FiniteGroup::symmetric(3), FiniteGroup::quaternion()}) {
    const auto n = static_cast<int>(g.order());
    auto untwisted = character_table(g).dims;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<GQ> f(static_cast<std::size_t>(n));
      const GQ units[4] = {GQ(1), GQ(-1), GQ::i(), -GQ::i()};
      for (auto& x : f) x = units[testing::rand_int(0, 3)];
      f[static_cast<std::size_t>(g.identity())] = GQ(1);
      Cocycle2 c = Cocycle2::trivial(g);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          c.values[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
              f[static_cast<std::size_t>(a)] * f[static_cast<std::size_t>(b)] / f[static_cast<std::size_t>(g.mul(a, b))];
      REQUIRE(verify_cocycle(g, c));
      auto blocks = twisted_blocks(g, c);
      CHECK(blocks == untwisted);
      std::size_t sq = 0;
      for (auto d : blocks) sq += d * d;
      CHECK(sq == g.order());
    }
  }
}
