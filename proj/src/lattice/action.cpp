#include "lattice/action.hpp"

#include <algorithm>
#include <numeric>

#include "exact/error.hpp"
#include "exact/torus_laurent.hpp"

namespace strata::lattice {

using exact::floor_mod;

namespace {

IntMatrix columns_matrix(const std::vector<IntVec>& cols, std::size_t n) { return IntMatrix::from_columns(cols, n); }

std::vector<IntVec> all_columns(const IntMatrix& m) {
  std::vector<IntVec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.col(c));
  return out;
}

bool in_span(const std::vector<IntVec>& hermite, IntVec v) {
  for (const auto& b : hermite) {
    std::size_t p = 0;
    while (b[p] == 0) ++p;
    if (v[p] % b[p] != 0) return false;
    std::int64_t q = v[p] / b[p];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = exact::checked_add(v[i], exact::checked_mul(-q, b[i]));
  }
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

std::string monomial_text(const IntVec& c, bool positive) {
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

}  // namespace

LatticeAction::LatticeAction(int rank, std::optional<IntVec> kernel, std::shared_ptr<const FiniteGroup> group,
                             std::vector<IntMatrix> matrices)
    : rank_(rank), kernel_(std::move(kernel)), group_(std::move(group)), matrices_(std::move(matrices)) {
  if (rank_ < 1) fail(ErrorCode::ValidationError, "lattice rank must be positive");
  if (!group_) fail(ErrorCode::ValidationError, "action has no group");
  const auto n = static_cast<std::size_t>(rank_);
  if (matrices_.size() != group_->order()) fail(ErrorCode::ValidationError, "need one matrix per group element");
  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    const IntMatrix& m = matrices_[g];
    if (m.rows() != n || m.cols() != n) fail(ErrorCode::ValidationError, "matrix for " + group_->name(static_cast<int>(g)) + " has wrong shape");
    std::int64_t det = m.determinant();
    if (det != 1 && det != -1) fail(ErrorCode::ValidationError, "matrix for " + group_->name(static_cast<int>(g)) + " is not unimodular");
  }
  if (!(matrix(group_->identity()) == IntMatrix::identity(n))) fail(ErrorCode::ValidationError, "identity must act trivially");
  const auto order = static_cast<int>(group_->order());
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (!(matrix(a) * matrix(b) == matrix(group_->mul(a, b))))
        fail(ErrorCode::ValidationError, "matrices are not a homomorphism at (" + group_->name(a) + "," + group_->name(b) + ")");
  if (kernel_) {
    if (kernel_->size() != n) fail(ErrorCode::ValidationError, "kernel vector has wrong length");
    if (std::all_of(kernel_->begin(), kernel_->end(), [](std::int64_t x) { return x == 0; }))
      fail(ErrorCode::ValidationError, "kernel vector is zero");
    for (int g = 0; g < order; ++g) {
      IntVec img = matrix(g).apply(*kernel_);
      if (img != *kernel_ && img != exact::vec_neg(*kernel_))
        fail(ErrorCode::ValidationError, "kernel vector is not fixed up to sign by " + group_->name(g));
    }
  }
}

LatticeAction LatticeAction::permutation(std::shared_ptr<const FiniteGroup> group, std::optional<IntVec> kernel) {
  const auto& perms = group->permutations();
  if (perms.empty()) fail(ErrorCode::ValidationError, "group carries no permutation realization");
  const std::size_t n = perms[0].size();
  std::vector<IntMatrix> ms;
  for (const auto& p : perms) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(static_cast<std::size_t>(p[i]), i) = 1;
    ms.push_back(std::move(m));
  }
  return LatticeAction(static_cast<int>(n), std::move(kernel), std::move(group), std::move(ms));
}

std::vector<std::string> SubtorusData::equations() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < relations.cols(); ++c) {
    IntVec v = relations.col(c);
    out.push_back(monomial_text(v, true) + " = " + monomial_text(v, false));
  }
  return out;
}

bool operator==(const SubtorusData& a, const SubtorusData& b) { return a.relations == b.relations; }

SubtorusData subtorus_from_relations(const IntMatrix& relations) {
  SubtorusData s;
  s.relations = columns_matrix(column_hermite_basis(relations), relations.rows());
  QuotientInvariants q = quotient_invariants(relations);
  s.rank_fixed = q.free_rank;
  s.torsion = q.torsion;
  for (auto t : s.torsion) s.component_count = exact::checked_mul(s.component_count, t);
  return s;
}

SubtorusData fixed_subtorus(const LatticeAction& action, const std::vector<int>& h) {
  if (!action.group().is_subgroup(h)) fail(ErrorCode::NotASubgroup, "element subset is not closed under multiplication");
  const auto n = static_cast<std::size_t>(action.rank());
  std::vector<IntVec> cols;
  for (int g : h) {
    IntMatrix d = action.matrix(g) - IntMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
      IntVec v = d.col(c);
      if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) cols.push_back(v);
    }
  }
  if (action.kernel()) cols.push_back(*action.kernel());
  return subtorus_from_relations(columns_matrix(cols, n));
}

SubtorusData intersect(const SubtorusData& a, const SubtorusData& b) {
  auto cols = all_columns(a.relations);
  auto more = all_columns(b.relations);
  cols.insert(cols.end(), more.begin(), more.end());
  return subtorus_from_relations(columns_matrix(cols, a.relations.rows()));
}

bool contains(const SubtorusData& outer, const SubtorusData& inner) {
  auto basis = all_columns(inner.relations);
  for (const auto& v : all_columns(outer.relations))
    if (!in_span(basis, v)) return false;
  return true;
}

bool on_torus(const LatticeAction& action, const RootPoint& p) {
  if (p.m < 1 || p.a.size() != static_cast<std::size_t>(action.rank())) return false;
  return !action.kernel() || floor_mod(exact::dot(*action.kernel(), p.a), p.m) == 0;
}

void require_on_torus(const LatticeAction& action, const std::vector<GQ>& p) {
  if (p.size() != static_cast<std::size_t>(action.rank()))
    fail(ErrorCode::PointOffTorus, "point has " + std::to_string(p.size()) + " coordinates, torus rank is " + std::to_string(action.rank()));
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].is_zero()) fail(ErrorCode::PointOffTorus, "coordinate z" + std::to_string(i + 1) + " is zero");
  if (action.kernel() && !exact::character_value(*action.kernel(), p).is_one())
    fail(ErrorCode::PointOffTorus, "point does not satisfy the kernel relation");
}

std::vector<int> stabilizer(const LatticeAction& action, const RootPoint& p) {
  if (!on_torus(action, p)) fail(ErrorCode::PointOffTorus, "torsion point is not on the torus");
  std::vector<int> out;
  const auto n = static_cast<std::size_t>(action.rank());
  for (int g = 0; g < static_cast<int>(action.group().order()); ++g) {
    const IntMatrix& m = action.matrix(g);
    bool fixed = true;
    for (std::size_t j = 0; j < n && fixed; ++j) {
      // ((M - 1)^T a)_j
      std::int64_t s = -p.a[j];
      for (std::size_t i = 0; i < n; ++i) s = exact::checked_add(s, exact::checked_mul(m(i, j), p.a[i]));
      fixed = floor_mod(s, p.m) == 0;
    }
    if (fixed) out.push_back(g);
  }
  return out;
}

std::vector<int> stabilizer(const LatticeAction& action, const std::vector<GQ>& p) {
  require_on_torus(action, p);
  std::vector<int> out;
  for (int g = 0; g < static_cast<int>(action.group().order()); ++g)
    if (act(action, g, p) == p) out.push_back(g);
  return out;
}

bool lies_on(const SubtorusData& s, const RootPoint& p) {
  for (std::size_t c = 0; c < s.relations.cols(); ++c)
    if (floor_mod(exact::dot(s.relations.col(c), p.a), p.m) != 0) return false;
  return true;
}

bool lies_on(const SubtorusData& s, const std::vector<GQ>& p) {
  for (std::size_t c = 0; c < s.relations.cols(); ++c)
    if (!exact::character_value(s.relations.col(c), p).is_one()) return false;
  return true;
}

std::vector<GQ> act(const LatticeAction& action, int g, const std::vector<GQ>& p) {
  const IntMatrix& m = action.matrix(action.group().inv(g));
  std::vector<GQ> out;
  for (std::size_t j = 0; j < p.size(); ++j) out.push_back(exact::character_value(m.col(j), p));
  return out;
}

std::vector<RootPoint> torsion_points(const SubtorusData& s, std::int64_t m, std::size_t limit) {
  if (m < 1) fail(ErrorCode::ValidationError, "torsion order must be positive");
  const std::size_t n = s.relations.rows();
  SmithForm f = smith_normal_form(s.relations);
  // choice ranges for b_i
  std::vector<std::int64_t> step(n), count(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < f.rank) {
      std::int64_t d = f.d(i, i);
      if (m % d != 0) fail(ErrorCode::ValidationError, "m must be a multiple of every torsion entry");
      step[i] = m / d;
      count[i] = d;
    } else {
      step[i] = 1;
      count[i] = m;
    }
    total *= static_cast<std::size_t>(count[i]);
    if (total > limit) fail(ErrorCode::OrbitTooLarge, "too many torsion points to enumerate");
  }
  std::vector<RootPoint> out;
  out.reserve(total);
  std::vector<std::int64_t> idx(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    RootPoint p{m, IntVec(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t b = idx[i] * step[i];
      if (b == 0) continue;
      for (std::size_t j = 0; j < n; ++j) p.a[j] = floor_mod(p.a[j] + b * f.u(i, j), m);
    }
    out.push_back(std::move(p));
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
    }
  }
  return out;
}

std::vector<Stratum> stratify(const LatticeAction& action, const StratifyOptions& opts) {
  const FiniteGroup& g = action.group();
  if (g.order() > opts.max_group_order)
    fail(ErrorCode::GroupTooLarge, "group order " + std::to_string(g.order()) + " exceeds " + std::to_string(opts.max_group_order));
  const auto subs = g.all_subgroups();
  const std::size_t ns = subs.size();
  std::vector<SubtorusData> carriers;
  for (const auto& h : subs) carriers.push_back(fixed_subtorus(action, h));
  std::int64_t lcm = 1;
  for (const auto& c : carriers)
    for (auto t : c.torsion) lcm = std::lcm(lcm, t);
  auto contains_strictly = [](const std::vector<int>& big, const std::vector<int>& small) {
    return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  // class representative of every subgroup
  std::vector<std::size_t> rep(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    std::vector<int> best = subs[k];
    for (int x = 0; x < static_cast<int>(g.order()); ++x) best = std::min(best, g.conjugate_subgroup(x, subs[k]));
    rep[k] = static_cast<std::size_t>(std::find(subs.begin(), subs.end(), best) - subs.begin());
  }
  std::vector<int> occurs(ns, -1);
  std::vector<std::optional<RootPoint>> witness(ns);
  for (std::size_t k = 0; k < ns; ++k) {
    if (rep[k] != k) continue;
    bool shadowed = false;
    for (std::size_t j = 0; j < ns && !shadowed; ++j)
      if (contains_strictly(subs[j], subs[k]) && carriers[j] == carriers[k]) shadowed = true;
    if (shadowed) {
      occurs[k] = 0;
      continue;
    }
    occurs[k] = 0;
    for (std::int64_t c = 1; c <= 24 && !witness[k]; ++c) {
      std::vector<RootPoint> pts;
      try {
        pts = torsion_points(carriers[k], lcm * c, 300000);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OrbitTooLarge) break;
        throw;
      }
      for (const auto& p : pts)
        if (on_torus(action, p) && stabilizer(action, p) == subs[k]) {
          witness[k] = p;
          break;
        }
    }
    if (witness[k]) occurs[k] = 1;
  }
  for (std::size_t k = 0; k < ns; ++k) occurs[k] = occurs[rep[k]];
  std::vector<std::size_t> class_reps;
  for (std::size_t k = 0; k < ns; ++k)
    if (rep[k] == k && occurs[k] == 1) class_reps.push_back(k);
  std::sort(class_reps.begin(), class_reps.end(), [&](std::size_t a, std::size_t b) {
    if (carriers[a].rank_fixed != carriers[b].rank_fixed) return carriers[a].rank_fixed > carriers[b].rank_fixed;
    if (subs[a].size() != subs[b].size()) return subs[a].size() < subs[b].size();
    return subs[a] < subs[b];
  });
  std::vector<Stratum> out;
  for (std::size_t k : class_reps) {
    Stratum s;
    s.stabilizer = subs[k];
    s.conjugates = static_cast<std::size_t>(std::count(rep.begin(), rep.end(), k));
    s.normalizer = g.normalizer(subs[k]);
    s.carrier = carriers[k];
    s.witness = witness[k];
    for (std::size_t t = 0; t < class_reps.size(); ++t) {
      std::size_t r = class_reps[t];
      bool larger = false;
      for (std::size_t j = 0; j < ns && !larger; ++j)
        if (rep[j] == r && contains_strictly(subs[j], subs[k])) larger = true;
      if (larger) s.excluded.push_back(t);
    }
    out.push_back(std::move(s));
  }
  return out;
}

StratumMembership::StratumMembership(const LatticeAction& action, const std::vector<Stratum>& strata) {
  const FiniteGroup& g = action.group();
  const auto subs = g.all_subgroups();
  std::vector<SubtorusData> sub_carriers;
  for (const auto& k : subs) sub_carriers.push_back(fixed_subtorus(action, k));
  for (const auto& s : strata) {
    std::vector<Piece> pieces;
    std::vector<std::vector<int>> seen;
    for (int x = 0; x < static_cast<int>(g.order()); ++x) {
      std::vector<int> h = g.conjugate_subgroup(x, s.stabilizer);
      if (std::find(seen.begin(), seen.end(), h) != seen.end()) continue;
      seen.push_back(h);
      Piece piece{fixed_subtorus(action, h), {}};
      for (std::size_t k = 0; k < subs.size(); ++k)
        if (subs[k].size() > h.size() && std::includes(subs[k].begin(), subs[k].end(), h.begin(), h.end()))
          piece.deeper.push_back(sub_carriers[k]);
      pieces.push_back(std::move(piece));
    }
    pieces_.push_back(std::move(pieces));
  }
}

bool StratumMembership::contains(std::size_t stratum, const RootPoint& p) const {
  for (const auto& piece : pieces_.at(stratum)) {
    if (!lies_on(piece.carrier, p)) continue;
    if (std::none_of(piece.deeper.begin(), piece.deeper.end(), [&](const SubtorusData& d) { return lies_on(d, p); }))
      return true;
  }
  return false;
}

bool StratumMembership::contains(std::size_t stratum, const std::vector<GQ>& p) const {
  for (const auto& piece : pieces_.at(stratum)) {
    if (!lies_on(piece.carrier, p)) continue;
    if (std::none_of(piece.deeper.begin(), piece.deeper.end(), [&](const SubtorusData& d) { return lies_on(d, p); }))
      return true;
  }
  return false;
}

std::size_t stratum_of(const LatticeAction& action, const std::vector<Stratum>& strata, const std::vector<int>& stabilizer) {
  const FiniteGroup& g = action.group();
  std::vector<int> best = stabilizer;
  std::sort(best.begin(), best.end());
  for (int x = 0; x < static_cast<int>(g.order()); ++x) best = std::min(best, g.conjugate_subgroup(x, stabilizer));
  for (std::size_t k = 0; k < strata.size(); ++k)
    if (strata[k].stabilizer == best) return k;
  fail(ErrorCode::ValidationError, "stabilizer does not occur among the strata");
}

}  // namespace strata::lattice
