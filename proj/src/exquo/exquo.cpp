#include "exquo/exquo.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <thread>

#include "exact/error.hpp"
#include "exact/torus_laurent.hpp"

namespace strata::exquo {

using exact::IntMatrix;
using groups::FiniteGroup;
using lattice::RootPoint;

namespace {

std::vector<lattice::Stratum> plain_strata(const ExtendedQuotient& eq) {
  std::vector<lattice::Stratum> out;
  for (const auto& s : eq.strata) out.push_back(s.stratum);
  return out;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

std::size_t orbit_count(std::size_t n, const std::vector<std::vector<std::size_t>>& perms) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& p : perms)
    for (std::size_t a = 0; a < n; ++a) parent[find_root(parent, a)] = find_root(parent, p[a]);
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a) k += find_root(parent, a) == a;
  return k;
}

void label_untwisted(const LatticeAction& action, QuotientStratum& qs) {
  const FiniteGroup& g = action.group();
  groups::Subgroup sub = groups::make_subgroup(g, qs.stratum.stabilizer);
  groups::CharacterTable t = groups::character_table(sub.group);
  for (std::size_t k = 0; k < t.dims.size(); ++k) qs.labels.push_back({"chi" + std::to_string(k + 1), t.dims[k]});
  qs.triv_label = 0;
  std::map<int, std::size_t> local;
  for (std::size_t k = 0; k < sub.embedding.size(); ++k) local[sub.embedding[k]] = k;
  std::vector<std::size_t> class_of(sub.embedding.size());
  for (std::size_t c = 0; c < t.classes.size(); ++c)
    for (int m : t.classes[c].members) class_of[static_cast<std::size_t>(m)] = c;
  for (int n : qs.stratum.normalizer) {
    std::vector<std::size_t> perm;
    for (const auto& chi : t.characters) {
      std::vector<GQ> moved;
      for (const auto& cls : t.classes) {
        int h = sub.embedding[static_cast<std::size_t>(cls.rep)];
        int back = g.conj(g.inv(n), h);  // n^-1 h n
        moved.push_back(chi[class_of[local.at(back)]]);
      }
      auto it = std::find(t.characters.begin(), t.characters.end(), moved);
      if (it == t.characters.end()) fail(ErrorCode::ValidationError, "normalizer does not permute the characters");
      perm.push_back(static_cast<std::size_t>(it - t.characters.begin()));
    }
    qs.normalizer_action.push_back(std::move(perm));
  }
  qs.label_orbits = orbit_count(qs.labels.size(), qs.normalizer_action);
}

void label_twisted(const LatticeAction& action, const Cocycle2& c, QuotientStratum& qs) {
  groups::Subgroup sub = groups::make_subgroup(action.group(), qs.stratum.stabilizer);
  auto dims = groups::twisted_blocks(sub.group, groups::restrict_cocycle(c, sub));
  for (std::size_t k = 0; k < dims.size(); ++k) qs.labels.push_back({"block" + std::to_string(k + 1), dims[k]});
  qs.label_orbits = qs.labels.size();
}

std::vector<IntVec> columns(const IntMatrix& m) {
  std::vector<IntVec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.col(c));
  return out;
}

std::string monomial(const IntVec& c, bool positive) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t e = positive ? c[i] : -c[i];
    if (e <= 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(i + 1);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

// translates g . coset for every g, without duplicates
std::vector<Coset> translates(const LatticeAction& action, const Coset& base) {
  std::vector<Coset> out;
  for (int g = 0; g < static_cast<int>(action.group().order()); ++g) {
    Coset c{action.matrix(g) * base.relations, base.values};
    bool dup = std::any_of(out.begin(), out.end(), [&](const Coset& o) { return o.relations == c.relations && o.values == c.values; });
    if (!dup) out.push_back(std::move(c));
  }
  return out;
}

Coset shifted(const lattice::SubtorusData& carrier, const IntVec& s, const GQ& v) {
  Coset c{carrier.relations, {}};
  for (const auto& col : columns(carrier.relations)) c.values.push_back(v.pow(exact::dot(col, s)));
  return c;
}

struct BruteCache {
  const LatticeAction* action;
  const std::optional<Cocycle2>* cocycle;
  std::map<std::vector<int>, std::size_t> counts;

  std::size_t count(const std::vector<int>& stab) {
    auto it = counts.find(stab);
    if (it != counts.end()) return it->second;
    groups::Subgroup sub = groups::make_subgroup(action->group(), stab);
    std::size_t k = *cocycle ? groups::regular_class_count(sub.group, groups::restrict_cocycle(**cocycle, sub))
                             : groups::conjugacy_classes(sub.group).size();
    counts.emplace(stab, k);
    return k;
  }
};

}  // namespace

ExtendedQuotient extended_quotient(std::shared_ptr<const LatticeAction> action) {
  ExtendedQuotient eq;
  eq.action = std::move(action);
  for (auto& s : lattice::stratify(*eq.action)) {
    QuotientStratum qs;
    qs.stratum = std::move(s);
    label_untwisted(*eq.action, qs);
    eq.strata.push_back(std::move(qs));
  }
  return eq;
}

ExtendedQuotient twisted_extended_quotient(std::shared_ptr<const LatticeAction> action, const Cocycle2& c) {
  std::string why;
  if (!groups::verify_cocycle(action->group(), c, &why)) fail(ErrorCode::InvalidCocycle, why);
  ExtendedQuotient eq;
  eq.action = std::move(action);
  eq.cocycle = c;
  for (auto& s : lattice::stratify(*eq.action)) {
    QuotientStratum qs;
    qs.stratum = std::move(s);
    label_twisted(*eq.action, c, qs);
    eq.strata.push_back(std::move(qs));
  }
  return eq;
}

std::size_t stratum_at(const ExtendedQuotient& eq, const std::vector<GQ>& point) {
  auto stab = lattice::stabilizer(*eq.action, point);
  return lattice::stratum_of(*eq.action, plain_strata(eq), stab);
}

std::vector<FiberLabel> fiber_at(const ExtendedQuotient& eq, const std::vector<GQ>& point) {
  return eq.strata[stratum_at(eq, point)].labels;
}

std::size_t component_count(const ExtendedQuotient& eq) {
  const LatticeAction& action = *eq.action;
  const FiniteGroup& g = action.group();
  std::size_t total = 0;
  for (const auto& cls : groups::conjugacy_classes(g)) {
    int w = cls.rep;
    auto t = lattice::fixed_subtorus(action, g.generated({w}));
    std::int64_t m = 1;
    for (auto d : t.torsion) m = std::lcm(m, d);
    auto snf = lattice::smith_normal_form(t.relations);
    auto uinv = snf.u.unimodular_inverse();
    if (!uinv) fail(ErrorCode::ValidationError, "Smith transform is not unimodular");
    const std::size_t n = t.relations.rows();
    // component of T^w holding a torsion point of order dividing `order`
    auto label = [&](const IntVec& a, std::int64_t order) {
      IntVec key;
      for (std::size_t i = 0; i < snf.rank; ++i) {
        std::int64_t d = snf.d(i, i);
        if (d <= 1) continue;
        std::int64_t b = 0;
        for (std::size_t j = 0; j < n; ++j) b += a[j] * (*uinv)(j, i);
        key.push_back(exact::floor_mod(b, order) / (order / d));
      }
      return key;
    };
    std::map<IntVec, std::size_t> index;
    std::vector<RootPoint> reps;
    for (const auto& p : lattice::torsion_points(t, m))
      if (index.emplace(label(p.a, m), reps.size()).second) reps.push_back(p);
    std::vector<std::vector<std::size_t>> perms;
    for (int z : g.centralizer(w)) {
      const IntMatrix& mz = action.matrix(g.inv(z));
      std::vector<std::size_t> perm;
      for (const auto& p : reps) {
        IntVec moved(n, 0);
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) moved[j] += mz(i, j) * p.a[i];
        for (auto& x : moved) x = exact::floor_mod(x, m);
        perm.push_back(index.at(label(moved, m)));
      }
      perms.push_back(std::move(perm));
    }
    if (!eq.cocycle) {
      total += orbit_count(reps.size(), perms);
      continue;
    }
    // Twisted: the sheet of w over a component C is nonempty on a dense open
    // subset iff w is regular in the generic stabilizer of C, which is the
    // intersection of the stabilizers of enough torsion points of C.
    std::int64_t fine = std::lcm(m, std::int64_t{12});
    double count = 1;
    for (std::size_t k = 0; k < t.rank_fixed; ++k) count *= static_cast<double>(fine);
    if (count * static_cast<double>(reps.size()) > 250000) fine = std::lcm(m, std::int64_t{6});
    std::vector<std::vector<bool>> generic(reps.size(), std::vector<bool>(g.order(), true));
    for (const auto& p : lattice::torsion_points(t, fine)) {
      auto stab = lattice::stabilizer(action, p);
      std::vector<bool> in(g.order(), false);
      for (int h : stab) in[static_cast<std::size_t>(h)] = true;
      auto& gen = generic[index.at(label(p.a, fine))];
      for (std::size_t h = 0; h < gen.size(); ++h) gen[h] = gen[h] && in[h];
    }
    auto regular_in = [&](const std::vector<bool>& h_set) {
      for (int h = 0; h < static_cast<int>(g.order()); ++h)
        if (h_set[static_cast<std::size_t>(h)] && g.mul(w, h) == g.mul(h, w) && !((*eq.cocycle)(w, h) == (*eq.cocycle)(h, w)))
          return false;
      return true;
    };
    std::vector<std::size_t> parent(reps.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& p : perms)
      for (std::size_t a = 0; a < reps.size(); ++a) parent[find_root(parent, a)] = find_root(parent, p[a]);
    for (std::size_t a = 0; a < reps.size(); ++a)
      if (find_root(parent, a) == a && regular_in(generic[a])) ++total;
  }
  return total;
}

OracleReport discrete_oracle(const ExtendedQuotient& eq, std::int64_t m) {
  if (m < 1) fail(ErrorCode::ValidationError, "m must be positive");
  const LatticeAction& action = *eq.action;
  const auto n = static_cast<std::size_t>(action.rank());
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(m);
    if (total > 4000000) fail(ErrorCode::OrbitTooLarge, "too many points for the discrete oracle");
  }
  const auto strata = plain_strata(eq);
  lattice::StratumMembership member(action, strata);

  struct Partial {
    std::size_t points = 0, mismatches = 0, unassigned = 0;
    std::vector<std::size_t> per;
    std::vector<std::string> failures;
  };
  auto run = [&](std::size_t lo, std::size_t hi) {
    Partial part;
    part.per.assign(strata.size(), 0);
    BruteCache cache{&action, &eq.cocycle, {}};
    for (std::size_t k = lo; k < hi; ++k) {
      RootPoint p{m, IntVec(n)};
      std::size_t rest = k;
      for (std::size_t i = n; i-- > 0;) {
        p.a[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(m));
        rest /= static_cast<std::size_t>(m);
      }
      if (!lattice::on_torus(action, p)) continue;
      ++part.points;
      std::size_t hits = 0, which = 0;
      for (std::size_t s = 0; s < strata.size(); ++s)
        if (member.contains(s, p)) {
          ++hits;
          which = s;
        }
      auto describe = [&] {
        std::string d = "(";
        for (std::size_t i = 0; i < n; ++i) d += (i ? "," : "") + std::to_string(p.a[i]);
        return d + ")/" + std::to_string(m);
      };
      if (hits != 1) {
        ++part.unassigned;
        if (part.failures.size() < 5) part.failures.push_back(describe() + " lies in " + std::to_string(hits) + " strata");
        continue;
      }
      ++part.per[which];
      std::size_t brute = cache.count(lattice::stabilizer(action, p));
      if (brute != eq.strata[which].multiplicity()) {
        ++part.mismatches;
        if (part.failures.size() < 5)
          part.failures.push_back(describe() + ": symbolic " + std::to_string(eq.strata[which].multiplicity()) +
                                  ", direct " + std::to_string(brute));
      }
    }
    return part;
  };
  std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (total < 4096) threads = 1;
  std::vector<std::future<Partial>> jobs;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t lo = total * t / threads, hi = total * (t + 1) / threads;
    jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, run, lo, hi));
  }
  OracleReport rep;
  rep.m = m;
  rep.stratum_points.assign(strata.size(), 0);
  for (auto& j : jobs) {
    Partial part = j.get();
    rep.points += part.points;
    rep.mismatches += part.mismatches;
    rep.unassigned += part.unassigned;
    for (std::size_t s = 0; s < strata.size(); ++s) rep.stratum_points[s] += part.per[s];
    for (auto& f : part.failures)
      if (rep.failures.size() < 5) rep.failures.push_back(std::move(f));
  }
  return rep;
}

std::vector<HHClass> hh_support(const LatticeAction& action, std::int64_t min_m) {
  const FiniteGroup& g = action.group();
  const auto n = static_cast<std::size_t>(action.rank());
  std::vector<HHClass> out;
  for (const auto& cls : groups::conjugacy_classes(g)) {
    HHClass h;
    h.rep = cls.rep;
    h.name = g.name(cls.rep);
    h.class_size = cls.members.size();
    auto t = lattice::fixed_subtorus(action, g.generated({cls.rep}));
    h.rank_fixed = t.rank_fixed;
    h.components = t.component_count;
    h.torsion = t.torsion;
    h.centralizer_order = g.centralizer(cls.rep).size();
    std::int64_t l = 1;
    for (auto d : t.torsion) l = std::lcm(l, d);
    h.oracle_m = ((std::max<std::int64_t>(min_m, 1) + l - 1) / l) * l;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::size_t>(h.oracle_m);
    if (total > 2000000) fail(ErrorCode::OrbitTooLarge, "oracle grid too large");
    for (std::size_t k = 0; k < total; ++k) {
      RootPoint p{h.oracle_m, IntVec(n)};
      std::size_t rest = k;
      for (std::size_t i = n; i-- > 0;) {
        p.a[i] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(h.oracle_m));
        rest /= static_cast<std::size_t>(h.oracle_m);
      }
      if (!lattice::on_torus(action, p)) continue;
      auto st = lattice::stabilizer(action, p);
      if (std::binary_search(st.begin(), st.end(), cls.rep)) ++h.oracle_fixed;
    }
    std::int64_t expect = h.components;
    for (std::size_t k = 0; k < h.rank_fixed; ++k) expect *= h.oracle_m;
    h.oracle_ok = expect == h.oracle_fixed;
    out.push_back(std::move(h));
  }
  return out;
}

ThetaShift ThetaShift::zero(const ExtendedQuotient& eq, const GQ& v) {
  ThetaShift s;
  s.v = v;
  for (std::size_t k = 0; k < eq.strata.size(); ++k)
    s.by_stratum[k] = IntVec(static_cast<std::size_t>(eq.action->rank()), 0);
  return s;
}

ThetaShift ThetaShift::gl2_iwahori(const ExtendedQuotient& eq, const GQ& v) {
  if (eq.action->rank() != 2 || eq.action->group().order() != 2)
    fail(ErrorCode::ShiftMissing, "the built-in shift applies to S_2 acting on a rank 2 torus");
  ThetaShift s;
  s.v = v;
  for (std::size_t k = 0; k < eq.strata.size(); ++k)
    s.by_stratum[k] = eq.strata[k].stratum.stabilizer.size() == 2 ? IntVec{-1, 1} : IntVec{0, 0};
  return s;
}

bool Coset::contains(const std::vector<GQ>& p) const {
  for (std::size_t c = 0; c < relations.cols(); ++c)
    if (!(exact::character_value(relations.col(c), p) == values[c])) return false;
  return true;
}

std::vector<std::string> Coset::equations() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < relations.cols(); ++c) {
    IntVec v = relations.col(c);
    std::string rhs = monomial(v, false);
    if (!values[c].is_one()) rhs = rhs == "1" ? values[c].str() : "(" + values[c].str() + ")*" + rhs;
    out.push_back(monomial(v, true) + " = " + rhs);
  }
  return out;
}

std::vector<DoublingInstruction> theta_glue_data(const ExtendedQuotient& eq, const ThetaShift& shift) {
  const LatticeAction& action = *eq.action;
  const FiniteGroup& g = action.group();
  const auto n = static_cast<std::size_t>(action.rank());
  if (shift.v.is_zero()) fail(ErrorCode::DivisionByZero, "shift parameter v is zero");
  for (const auto& [k, s] : shift.by_stratum) {
    if (k >= eq.strata.size()) fail(ErrorCode::ValidationError, "shift given for a nonexistent stratum");
    if (s.size() != n) fail(ErrorCode::ValidationError, "shift vector has wrong length");
    if (eq.strata[k].stratum.stabilizer.size() == 1 && std::any_of(s.begin(), s.end(), [](std::int64_t x) { return x != 0; }))
      fail(ErrorCode::ValidationError, "shift on the free stratum must be zero");
  }
  const auto subs = g.all_subgroups();
  std::vector<DoublingInstruction> out;
  for (std::size_t k = 0; k < eq.strata.size(); ++k) {
    const QuotientStratum& qs = eq.strata[k];
    std::vector<std::size_t> extra;
    for (std::size_t l = 0; l < qs.labels.size(); ++l) {
      bool base = eq.twisted() ? l == 0 : qs.triv_label && *qs.triv_label == l;
      if (!base) extra.push_back(l);
    }
    if (extra.empty()) continue;
    auto it = shift.by_stratum.find(k);
    if (it == shift.by_stratum.end())
      fail(ErrorCode::ShiftMissing, "no shift for stratum " + std::to_string(k) + " (stabilizer order " +
                                        std::to_string(qs.stratum.stabilizer.size()) + ")");
    const IntVec& s = it->second;
    std::vector<Coset> locus = translates(action, shifted(qs.stratum.carrier, s, shift.v));
    std::vector<Coset> minus;
    const auto& h = qs.stratum.stabilizer;
    for (const auto& big : subs)
      if (big.size() > h.size() && std::includes(big.begin(), big.end(), h.begin(), h.end()))
        for (auto& c : translates(action, shifted(lattice::fixed_subtorus(action, big), s, shift.v)))
          if (std::none_of(minus.begin(), minus.end(), [&](const Coset& o) { return o.relations == c.relations && o.values == c.values; }))
            minus.push_back(std::move(c));
    std::string desc;
    for (const auto& e : locus.front().equations()) desc += (desc.empty() ? "" : ", ") + e;
    if (!minus.empty()) {
      std::string m;
      for (const auto& e : minus.front().equations()) m += (m.empty() ? "" : ", ") + e;
      desc += " minus {" + m + "}";
    }
    desc += " up to the group action";
    for (std::size_t l : extra) out.push_back({k, qs.labels[l].name, locus, minus, desc});
  }
  return out;
}

}  // namespace strata::exquo
