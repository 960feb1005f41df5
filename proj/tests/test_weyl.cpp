#include <set>
#include <thread>

#include "doctest.h"
#include "exact/error.hpp"
#include "test_util.hpp"
#include "weyl/serialize.hpp"

using namespace strata;
using namespace strata::weyl;

namespace {

// Word-length oracle that never touches the group's cache: plain BFS over
// right multiplication by the affine simple generators.
std::map<Element, int> naive_lengths(const AffineWeyl& g, int radius) {
  std::map<Element, int> seen{{g.identity(), 0}};
  std::vector<Element> frontier{g.identity()};
  for (int k = 1; k <= radius; ++k) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (int i = 0; i < g.rank(); ++i) {
        Element y = g.compose(x, g.simple(i));
        if (seen.emplace(y, k).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

Element random_ball_element(const std::vector<Element>& ball) {
  return ball[static_cast<std::size_t>(testing::rand_int(0, static_cast<std::int64_t>(ball.size()) - 1))];
}

}  // namespace

TEST_CASE("root system specs") {
  for (int n = 2; n <= 5; ++n) {
    auto s = RootSystemSpec::make(Family::SL, n);
    CHECK(s.positive_roots.size() == static_cast<std::size_t>(n * (n - 1) / 2));
    CHECK(RootSystemSpec::parse(s.name()) == s);
  }
  CHECK(RootSystemSpec::parse("A_SL(3)").n == 3);
  CHECK_THROWS_AS(RootSystemSpec::make(Family::GL, 6), Error);
  CHECK_THROWS_AS(RootSystemSpec::parse("B_2"), Error);
}

TEST_CASE("group law") {
  AffineWeyl g(Family::SL, 3);
  Element e = g.identity();
  Element s1 = g.simple(1), s2 = g.simple(2);
  CHECK(g.compose(e, s1) == s1);
  CHECK(g.invert(e) == e);
  CHECK(g.invert(s1) == s1);
  // (1 2)(2 3) as maps: 1 -> 2, 2 -> 3, 3 -> 1
  Element c = g.compose(s1, s2);
  CHECK(c.translation == IntVec{0, 0, 0});
  CHECK(c.perm == Perm{1, 2, 0});
  for (int i = 0; i < 3; ++i) CHECK(g.compose(g.simple(i), g.simple(i)) == e);

  auto ball = g.ball(4);
  for (int k = 0; k < 300; ++k) {
    Element x = random_ball_element(ball), y = random_ball_element(ball), z = random_ball_element(ball);
    CHECK(g.compose(g.compose(x, y), z) == g.compose(x, g.compose(y, z)));
    CHECK(g.compose(x, g.invert(x)) == e);
    CHECK(g.compose(g.invert(x), x) == e);
  }
  AffineWeyl h(Family::GL, 3);
  CHECK_THROWS_AS(g.compose(s1, Element{{0, 0}, {0, 1}}), Error);
}

TEST_CASE("lengths of small elements") {
  AffineWeyl g(Family::SL, 3);
  CHECK(g.length(g.identity()) == 0);
  for (int i = 0; i < 3; ++i) CHECK(g.length(g.simple(i)) == 1);
  Element x = g.make({1, 0, -1}, {1, 0, 2});  // (lambda, s1)
  auto oracle = naive_lengths(g, 10);
  Element y = g.coxeter_part(x);
  REQUIRE(oracle.count(y));
  CHECK(g.length(x) == oracle.at(y));
  CHECK(g.length(x) == 3);
  CHECK(g.length(g.omega()) == 0);
  CHECK(g.length(g.omega_power(2)) == 0);
}

TEST_CASE("omega permutes the affine simple generators") {
  for (auto fam : {Family::GL, Family::SL})
    for (int n = 2; n <= 5; ++n) {
      AffineWeyl g(fam, n);
      std::set<Element> gens;
      for (int i = 0; i < n; ++i) gens.insert(g.simple(i));
      std::set<Element> conj;
      for (int i = 0; i < n; ++i) conj.insert(g.compose(g.compose(g.omega(), g.simple(i)), g.invert(g.omega())));
      CHECK(conj == gens);
      CHECK(g.omega_class(g.omega()) == 1);
      CHECK(g.length(g.omega()) == 0);
    }
}

TEST_CASE("reduced words") {
  AffineWeyl g(Family::SL, 3);
  CHECK(g.reduced_word(g.identity()) == ReducedWord{0, {}});
  CHECK(g.reduced_word(g.simple(2)) == ReducedWord{0, {2}});
  CHECK(g.reduced_word(g.compose(g.omega(), g.simple(1))) == ReducedWord{1, {1}});
  for (const auto& x : g.ball(6)) {
    for (auto rule : {DescentRule::Lowest, DescentRule::Highest}) {
      ReducedWord rw = g.reduced_word(x, rule);
      CHECK(static_cast<int>(rw.word.size()) == g.length(x));
      CHECK(g.from_word(rw) == x);
    }
  }
}

TEST_CASE("balls") {
  AffineWeyl g(Family::SL, 3);
  auto b0 = g.ball(0);
  CHECK(std::set<Element>(b0.begin(), b0.end()) ==
        std::set<Element>{g.identity(), g.omega(), g.omega_power(2)});
  AffineWeyl h(Family::GL, 2);
  auto b1 = h.ball(1);
  for (const auto& x : {h.identity(), h.simple(1), h.simple(0)})
    CHECK(std::find(b1.begin(), b1.end(), x) != b1.end());
  std::size_t prev = 0;
  for (int r = 0; r <= 8; ++r) {
    auto b = g.ball(r);
    CHECK(b.size() >= prev);
    prev = b.size();
  }
  CHECK_THROWS_AS(g.ball(13), Error);
  AffineWeyl small(Family::SL, 3, 3);
  CHECK_THROWS_AS(small.length(g.make({5, 0, -5}, {0, 1, 2})), Error);
}

TEST_CASE("length properties on balls") {
  for (auto [fam, n, r] : {std::tuple{Family::SL, 3, 7}, std::tuple{Family::GL, 2, 10}, std::tuple{Family::SL, 4, 4}}) {
    AffineWeyl g(fam, n, 2 * r);
    auto ball = g.ball(r);
    for (const auto& x : ball) {
      int lx = g.length(x);
      CHECK(g.length(g.invert(x)) == lx);
      for (int i = 0; i < n; ++i) {
        int ls = g.length(g.compose(x, g.simple(i)));
        CHECK((ls == lx + 1 || ls == lx - 1));
      }
    }
    for (int k = 0; k < 200; ++k) {
      Element x = random_ball_element(ball), y = random_ball_element(ball);
      CHECK(g.length(g.compose(x, y)) <= g.length(x) + g.length(y));
    }
  }
}

TEST_CASE("closed form length agrees with BFS") {
  AffineWeyl g(Family::SL, 3);
  for (const auto& x : g.ball(8)) CHECK(g.closed_form_length(x) == g.length(x));
  AffineWeyl h(Family::GL, 2);
  for (const auto& x : h.ball(10)) CHECK(h.closed_form_length(x) == h.length(x));
  AffineWeyl k(Family::GL, 4);
  for (const auto& x : k.ball(4)) CHECK(k.closed_form_length(x) == k.length(x));
}

TEST_CASE("serialization round trips") {
  AffineWeyl g(Family::SL, 3);
  for (const auto& x : g.ball(4)) {
    for (auto form : {EltForm::Word, EltForm::Translation}) {
      auto j = element_to_json(g, x, form);
      CHECK(element_from_json(g, j) == x);
      CHECK(element_from_json(g, nlohmann::json::parse(j.dump())) == x);
    }
  }
  CHECK_THROWS_AS(element_from_json(g, nlohmann::json::parse(R"({"word":[7]})")), Error);
  CHECK_THROWS_AS(element_from_json(g, nlohmann::json::parse(R"({"perm":[1,2,3]})")), Error);
}

TEST_CASE("concurrent length queries agree") {
  AffineWeyl g(Family::SL, 3);
  AffineWeyl ref(Family::SL, 3);
  auto ball = ref.ball(8);
  std::vector<int> expected;
  for (const auto& x : ball) expected.push_back(ref.length(x));
  std::vector<std::vector<int>> got(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (std::size_t k = 0; k < ball.size(); ++k) got[static_cast<std::size_t>(t)].push_back(g.length(ball[(k * 7 + static_cast<std::size_t>(t)) % ball.size()]));
    });
  for (auto& th : threads) th.join();
  for (int t = 0; t < 4; ++t)
    for (std::size_t k = 0; k < ball.size(); ++k)
      CHECK(got[static_cast<std::size_t>(t)][k] == expected[(k * 7 + static_cast<std::size_t>(t)) % ball.size()]);
}
