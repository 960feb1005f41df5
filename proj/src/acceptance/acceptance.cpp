#include "acceptance/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "exact/error.hpp"
#include "exquo/exquo.hpp"
#include "findim/analysis.hpp"
#include "findim/certificate.hpp"
#include "findim/spectrum.hpp"
#include "glue/glue.hpp"
#include "hecke/hecke.hpp"
#include "io/descriptors.hpp"
#include "weyl/weyl.hpp"

namespace strata::acceptance {

namespace {

using exact::GQ;
using Point = std::vector<GQ>;

// Collects failed expectations; the first one becomes the detail line.
struct Checker {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

Point pt(std::initializer_list<std::int64_t> xs) {
  Point p;
  for (auto x : xs) p.emplace_back(x);
  return p;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

template <class T>
T fixture(const std::string& name) {
  return io::expect<T>(io::load(name), name);
}

std::shared_ptr<const lattice::LatticeAction> perm_action(groups::FiniteGroup g, std::optional<exact::IntVec> kernel = std::nullopt) {
  return std::make_shared<const lattice::LatticeAction>(
      lattice::LatticeAction::permutation(std::make_shared<const groups::FiniteGroup>(std::move(g)), std::move(kernel)));
}

void sl5_strata(Checker& c) {
  auto a = fixture<io::ActionDoc>("sl5d-action.json");
  auto rho = fixture<io::CocycleDoc>("rho.json");
  auto tw = exquo::twisted_extended_quotient(a.action, rho.on(a.action->group()));
  auto un = exquo::extended_quotient(a.action);
  c.expect(tw.strata.size() == 5, "expected 5 strata, found " + std::to_string(tw.strata.size()));
  if (tw.strata.size() != 5 || un.strata.size() != 5) return;
  std::vector<const lattice::SubtorusData*> order2;
  std::size_t free = 0, full = 0;
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& s = tw.strata[k];
    const auto h = s.stratum.stabilizer.size();
    const auto r = s.stratum.carrier.rank_fixed;
    const auto m = s.multiplicity();
    if (h == 1) {
      ++free;
      c.expect(r == 4 && m == 1, "free stratum should have rank 4 and multiplicity 1");
    } else if (h == 2) {
      order2.push_back(&s.stratum.carrier);
      c.expect(r == 2 && m == 2, "order-2 stratum should have rank 2 and multiplicity 2");
    } else if (h == 4) {
      ++full;
      c.expect(r == 1 && m == 1, "V4 stratum should have rank 1 and twisted multiplicity 1");
      c.expect(un.strata[k].multiplicity() == 4, "untwisted multiplicity over T4 should be 4");
      if (order2.size() == 3) {
        auto meet = lattice::intersect(lattice::intersect(*order2[0], *order2[1]), *order2[2]);
        c.expect(meet == s.stratum.carrier, "T4 differs from T1 n T2 n T3");
      } else {
        c.expect(false, "the V4 stratum is listed before the order-2 strata");
      }
    }
  }
  c.expect(free == 1 && order2.size() == 3 && full == 1, "stabilizer orders are not 1, 2, 2, 2, 4");
  c.summary = "5 strata: free rank 4; T1,T2,T3 rank 2 mult 2; T4 rank 1 mult 1 (untwisted 4)";
}

void sl5_fibers(Checker& c) {
  auto a = fixture<io::ActionDoc>("sl5d-action.json");
  auto rho = fixture<io::CocycleDoc>("rho.json");
  auto tw = exquo::twisted_extended_quotient(a.action, rho.on(a.action->group()));
  findim::FiberDescriptor desc{findim::CrossedProduct{a.action, findim::Coefficient::m2_rho(), std::nullopt}};
  struct Case {
    Point p;
    std::vector<std::size_t> blocks;
  };
  std::string seen;
  for (const auto& k : {Case{pt({2, 3, 5, 7}), {8}}, Case{pt({2, 3, 2, 3}), {4, 4}}, Case{pt({5, 5, 5, 5}), {4}}}) {
    auto f = findim::build_fiber(desc, k.p);
    auto s = findim::analyze(f);
    auto b = s.block_dims();
    seen += (seen.empty() ? "" : " ") + join(b);
    c.expect(s.radical.dim() == 0, "fiber is not semisimple");
    c.expect(b == k.blocks, "expected blocks " + join(k.blocks) + ", found " + join(b));
    c.expect(b.size() == exquo::fiber_at(tw, k.p).size(), "block count differs from the twisted fiber size");
  }
  c.summary = "blocks " + seen + "; counts 1/2/1 match exquo";
}

void gl2(Checker& c) {
  auto a = fixture<io::ActionDoc>("gl2-iwahori.json");
  if (!a.theta) {
    c.expect(false, "fixture has no theta shift");
    return;
  }
  auto eq = exquo::extended_quotient(a.action);
  c.expect(exquo::component_count(eq) == 2, "expected 2 components");
  auto data = exquo::theta_glue_data(eq, a.theta->build(eq));
  c.expect(data.size() == 1, "expected a single doubling instruction");
  auto space = glue::from_theta(eq, data);
  const GQ v = a.theta->v;
  const GQ vi = v.inverse();
  for (const GQ& z : {GQ(2), GQ(3), GQ(-5), GQ::parse("1/2+i"), GQ::parse("7/3")}) {
    c.expect(glue::multiplicity_at(space, {vi * z, v * z}) == 2, "multiplicity is not 2 at (z/v, vz) for z = " + z.str());
    c.expect(glue::multiplicity_at(space, {v * z, vi * z}) == 2, "multiplicity is not 2 at (vz, z/v) for z = " + z.str());
    c.expect(glue::multiplicity_at(space, {z, z}) == 1, "multiplicity is not 1 on the diagonal for z = " + z.str());
    c.expect(glue::multiplicity_at(space, {z, GQ(11) * z}) == 1, "multiplicity is not 1 off C for z = " + z.str());
  }
  c.summary = "2 components; C = {{z/v, vz}} with v = " + v.str() + "; multiplicity 2 on C, 1 elsewhere";
}

void example_82(Checker& c) {
  auto alg = fixture<io::AlgebraDoc>("example-8.2-algebra.json");
  const auto& a = std::get<findim::PatternAlgebra>(alg.desc.body);
  for (const Point& p : {pt({1}), pt({-2}), Point{GQ::parse("1/2+i")}})
    c.expect(findim::blocks(findim::pattern_fiber(a, p).algebra) == std::vector<std::size_t>{2}, "blocks off Y are not {2}");
  c.expect(findim::blocks(findim::pattern_fiber(a, pt({0})).algebra) == std::vector<std::size_t>{1, 1}, "blocks on Y are not {1,1}");

  auto cert = fixture<io::CertificateDoc>("example-8.2-certificate.json");
  c.expect(cert.samples.size() >= 5, "fewer than 5 sample points");
  auto rep = findim::verify_certificate(cert.cert, cert.samples);
  c.expect(rep.accepted, "certificate rejected: " + (rep.chain_error.empty() && !rep.steps.empty() && !rep.steps[0].failures.empty()
                                                          ? rep.steps[0].failures[0]
                                                          : rep.chain_error));
  auto bare = cert.cert;
  for (auto& s : bare.steps)
    if (auto* m = std::get_if<findim::MorphismStep>(&s)) m->filtration_source = m->filtration_target = std::nullopt;
  c.expect(!findim::verify_certificate(bare, cert.samples).accepted, "the rightward map passes without filtrations");

  auto prim = fixture<io::GluedModelDoc>("example-8.2-prim.json").model();
  auto xy = fixture<io::GluedModelDoc>("example-8.2-xy.json").model();
  auto cmp = glue::distinguishing_invariants(prim, xy);
  auto has = [&](const char* k) { return std::find(cmp.differing.begin(), cmp.differing.end(), k) != cmp.differing.end(); };
  c.expect(cmp.verdict == "not homeomorphic", "verdict is '" + cmp.verdict + "'");
  c.expect(has("non-separated pair") && has("components"), "components and non-separated pair do not both differ");
  c.summary = "blocks {2} off Y, {1,1} on Y; certificate accepted at " + std::to_string(cert.samples.size()) +
              " points; Prim(A) vs X u Y: " + cmp.verdict;
}

void hecke_suite(Checker& c) {
  auto h = fixture<io::HeckeDoc>("sl3-hecke.json");
  std::string seen;
  for (const std::string& spec : {std::string("A_GL:2"), h.spec}) {
    auto r = hecke::run_suite(spec, h.radius, h.triples, h.pairs, h.seed);
    c.expect(r.quadratic, spec + ": quadratic relation fails");
    c.expect(r.associativity_triples == h.triples && r.associativity_failures == 0, spec + ": associativity fails");
    c.expect(r.specialization_pairs == h.pairs && r.specialization_failures == 0, spec + ": q = 1 specialization fails");
    c.expect(r.passed(), spec + ": suite fails");
    seen += (seen.empty() ? "" : ", ") + r.spec;
  }
  c.summary = seen + ": quadratic, " + std::to_string(h.triples) + " triples (length <= " + std::to_string(h.radius) + "), " +
              std::to_string(h.pairs) + " q = 1 products";
}

void fiber_law(Checker& c) {
  auto v4 = fixture<io::ActionDoc>("sl5d-action.json");
  auto rho = fixture<io::CocycleDoc>("rho.json");
  std::vector<std::pair<std::string, exquo::ExtendedQuotient>> cases;
  cases.emplace_back("S2 rank 2", exquo::extended_quotient(perm_action(groups::FiniteGroup::symmetric(2))));
  cases.emplace_back("S3 on the A2 torus", exquo::extended_quotient(perm_action(groups::FiniteGroup::symmetric(3), exact::IntVec{1, 1, 1})));
  cases.emplace_back("V4 rank 4", exquo::extended_quotient(v4.action));
  cases.emplace_back("V4 rank 4 twisted", exquo::twisted_extended_quotient(v4.action, rho.on(v4.action->group())));
  std::size_t total = 0;
  for (const auto& [name, eq] : cases) {
    auto r = exquo::discrete_oracle(eq, 12);
    total += r.points;
    c.expect(r.ok(), name + ": " + (r.failures.empty() ? std::string("mismatch") : r.failures[0]));
  }
  c.summary = std::to_string(total) + " points of mu_12^n across 4 actions agree";
}

void length_oracle(Checker& c) {
  weyl::AffineWeyl g(weyl::RootSystemSpec::parse("A_SL:3"), 8);
  auto ball = g.ball(8);
  std::size_t bad = 0;
  for (const auto& x : ball)
    if (g.closed_form_length(x) != g.length(x)) ++bad;
  c.expect(bad == 0, std::to_string(bad) + " elements where the closed form differs from BFS");
  c.summary = "closed form equals BFS length on all " + std::to_string(ball.size()) + " elements of the radius-8 ball";
}

void hh(Checker& c) {
  auto action = perm_action(groups::FiniteGroup::symmetric(3), exact::IntVec{1, 1, 1});
  auto rep = exquo::hh_support(*action);
  bool found = false;
  for (const auto& h : rep) {
    c.expect(h.oracle_ok, "oracle disagrees for class " + h.name);
    if (h.class_size == 2) {
      found = true;
      c.expect(h.rank_fixed == 0 && h.components == 3, "3-cycle class should give rank 0 with 3 components");
      c.expect(h.oracle_m == 3 && h.oracle_fixed == 3, "oracle at m = 3 should find 3 fixed points");
    }
  }
  c.expect(found, "no 3-cycle class");
  c.summary = "3-cycle: rank 0, 3 components, 3 fixed points at m = 3; " + std::to_string(rep.size()) + " classes agree";
}

void matrix_stability(Checker& c) {
  auto alg = fixture<io::AlgebraDoc>("example-8.2-algebra.json");
  const auto& a = std::get<findim::PatternAlgebra>(alg.desc.body);
  std::vector<std::pair<std::string, findim::FinDimAlgebra>> cases{
      {"A at 0", findim::pattern_fiber(a, pt({0})).algebra},
      {"A at 2", findim::pattern_fiber(a, pt({2})).algebra},
      {"M2", findim::FinDimAlgebra::matrix_algebra(2)}};
  for (const auto& [name, f] : cases)
    for (std::size_t n : {2u, 3u}) {
      findim::SpectrumReport r;
      c.expect(findim::diag_embedding_check(f, n, &r), name + ", n = " + std::to_string(n) + ": " + r.witness);
    }
  c.summary = "diagonal embedding spectrum preserving for n = 2, 3 on both example fibers and M2";
}

void closures(Checker& c) {
  auto line = fixture<io::GluedModelDoc>("doubled-line.json");
  const auto& s = line.sets.at("punctured-line");
  glue::SetDescriptor set{s.charts.at(0), s.locus, s.minus};
  const auto& origin = line.points.at("origin");
  for (std::size_t copy : {0u, 1u})
    c.expect(glue::closure_contains(line.spaces.at(0), set, {copy, origin}), "origin copy " + std::to_string(copy + 1) + " not in the closure");
  auto sq = fixture<io::GluedModelDoc>("doubled-line-square.json");
  const auto& d = sq.sets.at("diagonal");
  std::size_t in = 0;
  for (std::size_t x : {0u, 1u})
    for (std::size_t y : {0u, 1u})
      if (glue::closure_contains(sq.product(), {d.charts, d.locus, d.minus}, {{x, y}, sq.points.at("origin")})) ++in;
  c.expect(in == 4, std::to_string(in) + " of 4 origins in the closure of the diagonal");
  c.summary = "both origins in the closure of the punctured line; all 4 origins in the closure of the diagonal";
}

struct Entry {
  const char* title;
  void (*run)(Checker&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {"SL5(D) stratification", sl5_strata},
      {"SL5(D) fiber algebras", sl5_fibers},
      {"GL2 Iwahori", gl2},
      {"stratified equivalence of the two-block example", example_82},
      {"Hecke suite", hecke_suite},
      {"extended-quotient fiber law", fiber_law},
      {"length oracle", length_oracle},
      {"T~ support", hh},
      {"matrix stability", matrix_stability},
      {"closure facts", closures},
  };
  return e;
}

}  // namespace

int criterion_count() { return static_cast<int>(entries().size()); }

CriterionResult run_one(int id) {
  if (id < 1 || id > criterion_count()) fail(ErrorCode::ValidationError, "no acceptance criterion " + std::to_string(id));
  const auto& e = entries()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  try {
    e.run(c);
  } catch (const Error& err) {
    c.failures.push_back(err.what());
  } catch (const std::exception& err) {
    c.failures.push_back(err.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > kTimeLimitSeconds) c.failures.push_back("exceeded the time limit");
  r.passed = c.failures.empty();
  r.detail = r.passed ? c.summary : c.failures.front();
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int k = 1; k <= criterion_count(); ++k) out.push_back(run_one(k));
  return out;
}

}  // namespace strata::acceptance
