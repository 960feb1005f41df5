#include "hecke/hecke.hpp"

#include <algorithm>
#include <random>

#include "exact/error.hpp"

namespace strata::hecke {

using exact::IntMatrix;
using exact::IntVec;
using exact::TorusLaurent;
using weyl::Perm;

HeckeElt HeckeElt::basis(std::shared_ptr<const AffineWeyl> group, const Element& x, const LaurentQ& c) {
  group->check(x);
  HeckeElt h(std::move(group));
  h.add_term(x, c);
  return h;
}

HeckeElt HeckeElt::scalar(std::shared_ptr<const AffineWeyl> group, const LaurentQ& c) {
  Element e = group->identity();
  return basis(std::move(group), e, c);
}

void HeckeElt::add_term(const Element& x, const LaurentQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void HeckeElt::require_same(const HeckeElt& o) const {
  if (!(group_->spec() == o.group_->spec())) fail(ErrorCode::SpecMismatch, "Hecke elements over different root systems");
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  require_same(o);
  for (const auto& [x, c] : o.terms_) add_term(x, c);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  require_same(o);
  for (const auto& [x, c] : o.terms_) add_term(x, -c);
  return *this;
}

HeckeElt HeckeElt::scaled(const LaurentQ& c) const {
  HeckeElt r(group_);
  for (const auto& [x, v] : terms_) r.add_term(x, v * c);
  return r;
}

int HeckeElt::max_length() const {
  int m = 0;
  for (const auto& [x, c] : terms_) m = std::max(m, group_->length(x));
  return m;
}

std::string HeckeElt::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [x, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*T" + weyl::element_str(x);
  }
  return out;
}

namespace {

using Terms = HeckeElt::Terms;

void accumulate(Terms& t, const Element& x, const LaurentQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

Terms right_mul_simple(const AffineWeyl& g, const Terms& cur, int s, const DescentRule& rule) {
  Terms next;
  const Element gen = g.simple(s);
  for (const auto& [x, c] : cur) {
    Element xs = g.compose(x, gen);
    if (g.length(xs) == g.length(x) + 1) {
      accumulate(next, xs, c);
    } else {
      accumulate(next, xs, c * rule.shift);
      accumulate(next, x, c * rule.stay);
    }
  }
  return next;
}

Terms left_mul_simple(const AffineWeyl& g, int s, const Terms& cur, const DescentRule& rule) {
  Terms next;
  const Element gen = g.simple(s);
  for (const auto& [y, c] : cur) {
    Element sy = g.compose(gen, y);
    if (g.length(sy) == g.length(y) + 1) {
      accumulate(next, sy, c);
    } else {
      accumulate(next, sy, c * rule.shift);
      accumulate(next, y, c * rule.stay);
    }
  }
  return next;
}

}  // namespace

HeckeElt hecke_mul(const HeckeElt& a, const HeckeElt& b, const MulOptions& opts) {
  if (!(a.group().spec() == b.group().spec())) fail(ErrorCode::SpecMismatch, "Hecke elements over different root systems");
  const AffineWeyl& g = a.group();
  HeckeElt result(a.group_ptr());
  if (opts.peel == Peel::Right) {
    for (const auto& [y, cy] : b.terms()) {
      weyl::ReducedWord rw = g.reduced_word(y, opts.word_rule);
      Element w = g.omega_power(rw.omega_power);
      Terms cur;
      for (const auto& [x, cx] : a.terms()) accumulate(cur, g.compose(x, w), cx * cy);
      for (int s : rw.word) cur = right_mul_simple(g, cur, s, opts.rule);
      for (const auto& [u, c] : cur) result.add_term(u, c);
    }
  } else {
    for (const auto& [x, cx] : a.terms()) {
      weyl::ReducedWord rw = g.reduced_word(x, opts.word_rule);
      Terms cur;
      for (const auto& [y, cy] : b.terms()) accumulate(cur, y, cx * cy);
      for (auto it = rw.word.rbegin(); it != rw.word.rend(); ++it) cur = left_mul_simple(g, *it, cur, opts.rule);
      Element w = g.omega_power(rw.omega_power);
      for (const auto& [u, c] : cur) result.add_term(g.compose(w, u), c);
    }
  }
  return result;
}

TorusLaurent permute_function(const Perm& w, const TorusLaurent& f) {
  const std::size_t n = w.size();
  IntMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(static_cast<std::size_t>(w[i]), i) = 1;
  return f.transformed(p);
}

CrossedProductElt CrossedProductElt::basis(exact::LatticeSpec lattice, const IntVec& lambda, const Perm& w,
                                           const GQ& c) {
  CrossedProductElt r(lattice);
  r.add(w, TorusLaurent::monomial(std::move(lattice), lambda, c));
  return r;
}

CrossedProductElt CrossedProductElt::function(const TorusLaurent& f) {
  CrossedProductElt r(f.lattice());
  Perm id(static_cast<std::size_t>(f.lattice().rank));
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  r.add(id, f);
  return r;
}

void CrossedProductElt::add(const Perm& w, const TorusLaurent& f) {
  if (!(f.lattice() == lattice_)) fail(ErrorCode::SpecMismatch, "crossed product coefficient over another lattice");
  if (f.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) terms_.erase(it);
}

GQ CrossedProductElt::coefficient(const IntVec& lambda, const Perm& w) const {
  auto it = terms_.find(w);
  if (it == terms_.end()) return GQ(0);
  auto jt = it->second.terms().find(lattice_.canonical(lambda));
  return jt == it->second.terms().end() ? GQ(0) : jt->second;
}

CrossedProductElt& CrossedProductElt::operator+=(const CrossedProductElt& o) {
  for (const auto& [w, f] : o.terms_) add(w, f);
  return *this;
}

CrossedProductElt operator*(const CrossedProductElt& a, const CrossedProductElt& b) {
  if (!(a.lattice_ == b.lattice_)) fail(ErrorCode::SpecMismatch, "crossed products over different lattices");
  CrossedProductElt r(a.lattice_);
  for (const auto& [w1, f1] : a.terms_)
    for (const auto& [w2, f2] : b.terms_) {
      Perm w(w2.size());
      for (std::size_t i = 0; i < w2.size(); ++i) w[i] = w1[static_cast<std::size_t>(w2[i])];
      r.add(w, f1 * permute_function(w1, f2));
    }
  return r;
}

std::string CrossedProductElt::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, f] : terms_) {
    if (!out.empty()) out += " + ";
    out += "[" + f.str() + "]*w(";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i] + 1);
    out += ")";
  }
  return out;
}

CrossedProductElt specialize(const HeckeElt& a, const GQ& zeta) {
  if (zeta.is_zero()) fail(ErrorCode::DivisionByZero, "specialization at q = 0");
  const auto& lattice = a.group().spec().lattice;
  CrossedProductElt r(lattice);
  for (const auto& [x, c] : a.terms()) r += CrossedProductElt::basis(lattice, x.translation, x.perm, c.eval(zeta));
  return r;
}

bool QuadraticReport::all_passed() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

QuadraticReport verify_quadratic(std::shared_ptr<const AffineWeyl> group, int radius, const MulOptions& opts) {
  if (radius < 1) fail(ErrorCode::ValidationError, "quadratic check needs radius >= 1");
  QuadraticReport rep;
  const auto ball = group->ball(radius);
  const LaurentQ q = LaurentQ::q();
  for (int s = 0; s < group->rank(); ++s) {
    HeckeElt ts = HeckeElt::basis(group, group->simple(s));
    HeckeElt left = ts - HeckeElt::scalar(group, q);
    HeckeElt right = ts + HeckeElt::scalar(group, LaurentQ(1));
    bool ok = hecke_mul(left, right, opts).is_zero();
    for (const auto& x : ball) {
      if (!ok) break;
      HeckeElt tx = HeckeElt::basis(group, x);
      ok = hecke_mul(hecke_mul(tx, left, opts), right, opts).is_zero();
    }
    rep.generators.push_back(s);
    rep.passed.push_back(ok);
  }
  return rep;
}

bool verify_central_q1(const AffineWeyl& group, const TorusLaurent& f, const std::vector<CrossedProductElt>& samples) {
  if (!(f.lattice() == group.spec().lattice)) fail(ErrorCode::SpecMismatch, "function lives on another torus");
  Perm w = weyl::perm_identity(group.rank());
  do {
    if (!(permute_function(w, f) == f)) fail(ErrorCode::NotWInvariant, "function is not W-invariant: " + f.str());
  } while (std::next_permutation(w.begin(), w.end()));
  CrossedProductElt fe = CrossedProductElt::function(f);
  for (const auto& x : samples)
    if (!(fe * x == x * fe)) return false;
  return true;
}

bool SuiteReport::passed() const {
  return quadratic && associativity_failures == 0 && word_independence_failures == 0 && specialization_failures == 0 &&
         support_violations == 0;
}

SuiteReport run_suite(const std::string& spec_name, int radius, int triples, int pairs, std::uint64_t seed) {
  if (radius < 1) fail(ErrorCode::ValidationError, "suite radius must be >= 1");
  auto group = std::make_shared<AffineWeyl>(weyl::RootSystemSpec::parse(spec_name), 3 * radius + 2);
  SuiteReport rep;
  rep.spec = group->spec().name();
  rep.radius = radius;
  rep.quadratic = verify_quadratic(group, std::min(radius, 3)).all_passed();

  const auto ball = group->ball(radius);
  std::mt19937_64 gen(seed);
  auto pick = [&] {
    std::uniform_int_distribution<std::size_t> d(0, ball.size() - 1);
    return HeckeElt::basis(group, ball[d(gen)]);
  };

  for (int k = 0; k < triples; ++k) {
    HeckeElt a = pick(), b = pick(), c = pick();
    ++rep.associativity_triples;
    if (!(hecke_mul(hecke_mul(a, b), c) == hecke_mul(a, hecke_mul(b, c)))) ++rep.associativity_failures;
  }
  MulOptions highest;
  highest.word_rule = weyl::DescentRule::Highest;
  MulOptions left;
  left.peel = Peel::Left;
  for (int k = 0; k < pairs; ++k) {
    HeckeElt a = pick(), b = pick();
    HeckeElt ab = hecke_mul(a, b);
    ++rep.word_independence_pairs;
    if (!(ab == hecke_mul(a, b, highest) && ab == hecke_mul(a, b, left))) ++rep.word_independence_failures;
    ++rep.specialization_pairs;
    // independent group-algebra product of the two basis elements
    if (!(specialize(ab, GQ(1)) == specialize(a, GQ(1)) * specialize(b, GQ(1)))) ++rep.specialization_failures;
    int budget = a.max_length() + b.max_length();
    for (const auto& [u, c] : ab.terms())
      if (group->length(u) > budget) ++rep.support_violations;
  }
  return rep;
}

}  // namespace strata::hecke
