#include <algorithm>

#include "doctest.h"
#include "exact/error.hpp"
#include "exquo/exquo.hpp"
#include "findim/certificate.hpp"
#include "test_util.hpp"

using namespace strata;
using namespace strata::findim;
using exact::IntVec;
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

std::shared_ptr<const lattice::LatticeAction> perm_action(FiniteGroup g, std::optional<IntVec> kernel = std::nullopt) {
  return std::make_shared<const lattice::LatticeAction>(
      lattice::LatticeAction::permutation(std::make_shared<const FiniteGroup>(std::move(g)), std::move(kernel)));
}

using K = EntryKind;

// Y = {0} in the affine line
PatternAlgebra line_pattern(std::vector<PatternBlock> blocks) {
  PatternAlgebra a;
  a.base = {BaseVariety::Kind::Affine, 1};
  a.y.normals = {GQVec{GQ(1)}};
  a.y.values = {GQ(0)};
  a.blocks = std::move(blocks);
  return a;
}

PatternAlgebra algebra_a() { return line_pattern({{2, {K::Unit, K::IdealY, K::IdealY, K::Unit}}}); }
PatternAlgebra algebra_c() { return line_pattern({{2, {K::Unit, K::Unit, K::Unit, K::Unit}}, {1, {K::QuotientY}}}); }
PatternAlgebra algebra_b() { return line_pattern({{1, {K::Unit}}, {1, {K::QuotientY}}}); }

PatternMap a_to_c() {
  return {{{{0, GQ(1)}}, {{1, GQ(1)}}, {{2, GQ(1)}}, {{3, GQ(1)}, {4, GQ(1)}}}};
}
PatternMap b_to_c() { return {{{{0, GQ(1)}}, {{4, GQ(1)}}}}; }
std::vector<IdealPattern> filt_a() {
  return {{{K::Unit, K::IdealY, K::IdealY, K::IdealY}}, {{K::Unit, K::IdealY, K::IdealY, K::Unit}}};
}
std::vector<IdealPattern> filt_c() {
  return {{{K::Unit, K::Unit, K::Unit, K::Unit, K::Zero}}, {{K::Unit, K::Unit, K::Unit, K::Unit, K::QuotientY}}};
}

EquivalenceCertificate theorem_certificate() {
  EquivalenceCertificate cert;
  cert.algebras["A"] = {algebra_a()};
  cert.algebras["C"] = {algebra_c()};
  cert.algebras["B"] = {algebra_b()};
  cert.start = "A";
  cert.end = "B";
  MorphismStep right{"A", "C", true, a_to_c(), filt_a(), filt_c()};
  MorphismStep left{"C", "B", false, b_to_c(), std::nullopt, std::nullopt};
  cert.steps = {right, left};
  return cert;
}

}  // namespace

TEST_CASE("pattern fibers of the matrix ideal algebra") {
  auto a = algebra_a();
  a.validate();
  for (const auto& f : filt_a()) validate_ideal(a, f);
  auto at0 = pattern_fiber(a, pt({0}));
  CHECK(at0.algebra.dim() == 2);
  CHECK(blocks(at0.algebra) == std::vector<std::size_t>{1, 1});
  auto at2 = pattern_fiber(a, pt({2}));
  CHECK(blocks(at2.algebra) == std::vector<std::size_t>{2});
  auto s = analyze(at2.algebra);
  CHECK(central_character(at2.algebra, s, 0) == std::vector<GQ>{GQ(2)});
  CHECK(blocks(pattern_fiber(algebra_c(), pt({0})).algebra) == std::vector<std::size_t>{1, 2});
  CHECK(blocks(pattern_fiber(algebra_c(), pt({3})).algebra) == std::vector<std::size_t>{2});

  auto bad = line_pattern({{2, {K::IdealY, K::Unit, K::Unit, K::IdealY}}});
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { validate_ideal(a, {{K::Unit, K::Zero, K::Zero, K::Zero}}); }) == ErrorCode::ValidationError);
  CHECK(code_of([&] { pattern_fiber(a, pt({1, 2})); }) == ErrorCode::PointOffBase);
}

TEST_CASE("crossed product fibers of the SL5(D) data") {
  auto v4 = perm_action(FiniteGroup::klein_four());
  FiberDescriptor m2{CrossedProduct{v4, Coefficient::m2_rho(), std::nullopt}};
  CHECK(m2.kind() == "crossed_product");
  struct Case {
    std::vector<GQ> p;
    std::size_t dim;
    std::vector<std::size_t> blocks;
  };
  for (const auto& c : {Case{pt({2, 3, 5, 7}), 64, {8}}, Case{pt({2, 3, 2, 3}), 32, {4, 4}}, Case{pt({5, 5, 5, 5}), 16, {4}}}) {
    auto f = build_fiber(m2, c.p);
    CHECK(f.dim() == c.dim);
    CHECK(f.is_associative());
    CHECK(f.unit_ok());
    CHECK(f.marked_central_ok());
    auto s = analyze(f);
    CHECK(s.radical.dim() == 0);
    CHECK(s.block_dims() == c.blocks);
  }
  auto f = build_fiber(m2, pt({2, 3, 2, 3}));
  auto s = analyze(f);
  CHECK(central_character(f, s, 0) == central_character(f, s, 1));

  FiberDescriptor tw{CrossedProduct{v4, Coefficient::scalar(), groups::rho_quaternion()}};
  CHECK(tw.kind() == "twisted_crossed_product");
  CHECK(blocks(build_fiber(tw, pt({5, 5, 5, 5}))) == std::vector<std::size_t>{2});
  CHECK(blocks(build_fiber(tw, pt({2, 3, 2, 3}))) == std::vector<std::size_t>{2, 2});
  CHECK(blocks(build_fiber(tw, pt({2, 3, 5, 7}))) == std::vector<std::size_t>{4});
  FiberDescriptor plain{CrossedProduct{v4, Coefficient::scalar(), std::nullopt}};
  CHECK(blocks(build_fiber(plain, pt({5, 5, 5, 5}))) == std::vector<std::size_t>{1, 1, 1, 1});

  CHECK(code_of([&] { build_fiber(plain, pt({0, 1, 1, 1})); }) == ErrorCode::PointOffBase);
  FiberDescriptor big{CrossedProduct{perm_action(FiniteGroup::symmetric(4)), Coefficient::scalar(), std::nullopt}};
  CHECK(code_of([&] { build_fiber(big, pt({2, 3, 5, 7})); }) == ErrorCode::OrbitTooLarge);
  FiberDescriptor triv{CrossedProduct{perm_action(FiniteGroup::from_permutations({{0}})), Coefficient::scalar(), std::nullopt}};
  auto one = build_fiber(triv, pt({2}));
  CHECK(one.dim() == 1);
  CHECK(central_character(one, analyze(one), 0) == std::vector<GQ>{GQ(2)});
}

TEST_CASE("fiber census agrees with the extended quotient") {
  auto v4 = perm_action(FiniteGroup::klein_four());
  auto s3 = perm_action(FiniteGroup::symmetric(3), IntVec{1, 1, 1});
  struct Case {
    std::shared_ptr<const lattice::LatticeAction> action;
    std::optional<groups::Cocycle2> c;
  };
  for (const auto& cs : {Case{v4, std::nullopt}, Case{v4, groups::rho_quaternion()}, Case{s3, std::nullopt}}) {
    auto eq = cs.c ? exquo::twisted_extended_quotient(cs.action, *cs.c) : exquo::extended_quotient(cs.action);
    FiberDescriptor d{CrossedProduct{cs.action, Coefficient::scalar(), cs.c}};
    for (int k = 0; k < 12; ++k) {
      std::vector<GQ> p;
      for (int i = 0; i < cs.action->rank(); ++i) p.emplace_back(testing::rand_int(1, 3));
      if (cs.action->kernel()) p.back() = (p[0] * p[1]).inverse();
      auto fib = build_fiber(d, p);
      auto census = blocks(fib);
      CHECK(census.size() == exquo::fiber_at(eq, p).size());
      if (cs.c) {
        auto h = lattice::stabilizer(*cs.action, p);
        auto sub = groups::make_subgroup(cs.action->group(), h);
        CHECK(census.size() == groups::regular_class_count(sub.group, groups::restrict_cocycle(*cs.c, sub)));
      }
      auto id = verify_spectrum_preserving(fib, fib, AlgebraMap::identity(fib.dim()));
      CHECK(id.preserving);
    }
  }
}

TEST_CASE("certificate morphisms map fiberwise") {
  auto a = algebra_a(), c = algebra_c(), b = algebra_b();
  for (std::int64_t x : {0, 1, -2}) {
    auto p = pt({x});
    auto fa = pattern_fiber(a, p), fc = pattern_fiber(c, p), fb = pattern_fiber(b, p);
    auto f = pattern_map_fiber(a, fa, c, fc, a_to_c());
    require_morphism(fa.algebra, fc.algebra, f);
    Filtration ia, jc;
    for (const auto& i : filt_a()) ia.chain.push_back(ideal_fiber(a, fa, i, p));
    for (const auto& j : filt_c()) jc.chain.push_back(ideal_fiber(c, fc, j, p));
    CHECK(verify_spectrum_preserving(fa.algebra, fc.algebra, f, ia, jc).preserving);
    // without filtrations the map fails exactly on Y
    CHECK(verify_spectrum_preserving(fa.algebra, fc.algebra, f).preserving == (x != 0));
    auto g = pattern_map_fiber(b, fb, c, fc, b_to_c());
    CHECK(verify_spectrum_preserving(fb.algebra, fc.algebra, g).preserving);
  }
}

TEST_CASE("certificates") {
  std::vector<std::vector<GQ>> samples;
  for (std::int64_t x : {0, 1, 2, -1, 3}) samples.push_back(pt({x}));
  auto rep = verify_certificate(theorem_certificate(), samples);
  CHECK(rep.accepted);
  CHECK(rep.scope == "fiberwise");
  REQUIRE(rep.steps.size() == 2);
  CHECK(rep.steps[0].samples_checked == 5);

  auto no_filt = theorem_certificate();
  std::get<MorphismStep>(no_filt.steps[0]).filtration_source.reset();
  std::get<MorphismStep>(no_filt.steps[0]).filtration_target.reset();
  auto r2 = verify_certificate(no_filt, samples);
  CHECK_FALSE(r2.accepted);
  CHECK(r2.steps[0].failures.size() == 1);
  CHECK(r2.steps[1].ok);

  auto broken = theorem_certificate();
  broken.end = "C";
  CHECK_FALSE(verify_certificate(broken, samples).chain_error.empty());

  EquivalenceCertificate empty;
  empty.algebras["A"] = {algebra_a()};
  empty.start = empty.end = "A";
  CHECK(verify_certificate(empty, samples).accepted);

  // A = C[z, z^-1], Psi(z) = z t
  PatternAlgebra lz;
  lz.base = {BaseVariety::Kind::Torus, 1};
  lz.blocks = {{1, {K::Unit}}};
  const exact::LatticeSpec lat{1, std::nullopt};
  auto z = exact::TorusLaurent::coordinate(lat, 0);
  VariationStep v;
  v.algebra = "L";
  v.psi = {PatternLaurent{{1, PatternElement{{0, z}}}}};
  v.zeta = GQ(1);
  v.eta = GQ(2);
  v.action_zeta = {PatternElement{{0, z}}};
  v.action_eta = {PatternElement{{0, z.scaled(GQ(2))}}};
  EquivalenceCertificate var;
  var.algebras["L"] = {lz};
  var.start = var.end = "L";
  var.steps = {v};
  std::vector<std::vector<GQ>> tor{pt({1}), pt({2}), pt({-3})};
  CHECK(verify_certificate(var, tor).accepted);
  v.action_eta = {PatternElement{{0, z.scaled(GQ(3))}}};
  var.steps = {v};
  CHECK_FALSE(verify_certificate(var, tor).accepted);

  // off-diagonal images are not central in M_2
  PatternAlgebra m2;
  m2.base = {BaseVariety::Kind::Torus, 1};
  m2.blocks = {{2, {K::Unit, K::Unit, K::Unit, K::Unit}}};
  std::string w;
  CHECK_FALSE(is_central(m2, PatternElement{{1, z}}, &w));
  CHECK(is_central(m2, PatternElement{{0, z}, {3, z}}));
}

TEST_CASE("matrix stability at fiber level") {
  for (std::int64_t x : {0, 2})
    for (std::size_t n : {2u, 3u}) CHECK(diag_embedding_check(pattern_fiber(algebra_a(), pt({x})).algebra, n));
  CHECK(diag_embedding_check(FinDimAlgebra::matrix_algebra(2), 2));
}
