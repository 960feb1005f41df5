#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groups/cocycle.hpp"
#include "lattice/action.hpp"

namespace strata::exquo {

using exact::GQ;
using exact::IntVec;
using groups::Cocycle2;
using lattice::LatticeAction;

struct FiberLabel {
  std::string name;  // "chi1", ... (untwisted) or "block1", ... (twisted)
  std::size_t dim = 1;
};

struct QuotientStratum {
  lattice::Stratum stratum;
  std::vector<FiberLabel> labels;
  std::optional<std::size_t> triv_label;  // untwisted only
  /// Untwisted only: permutation of labels induced by each normalizer element
  /// (aligned with stratum.normalizer), and the number of label orbits.
  std::vector<std::vector<std::size_t>> normalizer_action;
  std::size_t label_orbits = 0;

  std::size_t multiplicity() const { return labels.size(); }
};

/// Stratumwise description of X//G or (X//G)_c.
struct ExtendedQuotient {
  std::shared_ptr<const LatticeAction> action;
  std::optional<Cocycle2> cocycle;
  std::vector<QuotientStratum> strata;

  bool twisted() const { return cocycle.has_value(); }
};

ExtendedQuotient extended_quotient(std::shared_ptr<const LatticeAction> action);
/// InvalidCocycle unless the cocycle verifies on the acting group.
ExtendedQuotient twisted_extended_quotient(std::shared_ptr<const LatticeAction> action, const Cocycle2& c);

/// Index of the stratum containing an exact torus point (PointOffTorus).
std::size_t stratum_at(const ExtendedQuotient& eq, const std::vector<GQ>& point);
std::vector<FiberLabel> fiber_at(const ExtendedQuotient& eq, const std::vector<GQ>& point);

/// Irreducible components: sum over conjugacy classes [g] of the number of
/// Z(g)-orbits on the components of T^g. Twisted, an orbit counts only when
/// g is regular in the generic stabilizer of its components.
std::size_t component_count(const ExtendedQuotient& eq);

struct OracleReport {
  std::int64_t m = 1;
  std::size_t points = 0;
  std::vector<std::size_t> stratum_points;  // per symbolic stratum
  std::size_t mismatches = 0;               // symbolic fiber size != brute-force count
  std::size_t unassigned = 0;               // points in no symbolic stratum or in several
  std::vector<std::string> failures;        // first few offending points

  bool ok() const { return mismatches == 0 && unassigned == 0; }
};

/// Every point of (mu_m)^n: stabilizer by direct matrix action, conjugacy
/// (or regular-class) count by brute force, compared with the symbolic strata.
OracleReport discrete_oracle(const ExtendedQuotient& eq, std::int64_t m);

struct HHClass {
  int rep = 0;
  std::string name;
  std::size_t class_size = 0;
  std::size_t rank_fixed = 0;
  std::int64_t components = 1;
  std::vector<std::int64_t> torsion;
  std::size_t centralizer_order = 0;
  std::int64_t oracle_m = 0;
  std::int64_t oracle_fixed = 0;  // fixed points of rep on the m-torsion of the torus
  bool oracle_ok = false;         // oracle_fixed == m^rank_fixed * components
};

/// Indexing data of T~ = {(w, t) : w t = t}: one entry per conjugacy class.
/// The oracle uses the smallest m >= min_m divisible by every torsion entry.
std::vector<HHClass> hh_support(const LatticeAction& action, std::int64_t min_m = 2);

/// Multiplicative shift of points t -> t * v^s (s integer v-exponents, q = v^2)
/// applied to the extra fiber labels of each stratum.
struct ThetaShift {
  GQ v = GQ(1);
  std::map<std::size_t, IntVec> by_stratum;

  static ThetaShift zero(const ExtendedQuotient& eq, const GQ& v = GQ(1));
  /// S_2 on rank 2: the diagonal stratum is shifted by (v^-1, v).
  static ThetaShift gl2_iwahori(const ExtendedQuotient& eq, const GQ& v);
};

/// Coset {t : chi^{c_k}(t) = values_k} of a subtorus of T.
struct Coset {
  exact::IntMatrix relations;
  std::vector<GQ> values;

  bool contains(const std::vector<GQ>& p) const;
  std::vector<std::string> equations() const;
};

struct DoublingInstruction {
  std::size_t stratum = 0;
  std::string label;
  std::vector<Coset> locus;  // G-translates; a point is on the locus if it lies on one
  std::vector<Coset> minus;  // G-translates of the excluded carriers, shifted likewise
  std::string description;
};

/// One instruction per extra fiber label. ShiftMissing when a stratum with
/// extra labels has no shift; ValidationError for a nonzero shift on the free stratum.
std::vector<DoublingInstruction> theta_glue_data(const ExtendedQuotient& eq, const ThetaShift& shift);

}  // namespace strata::exquo
