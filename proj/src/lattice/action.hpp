#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exact/gaussian.hpp"
#include "exact/int_matrix.hpp"
#include "groups/group.hpp"
#include "lattice/snf.hpp"

namespace strata::lattice {

using exact::GQ;
using groups::FiniteGroup;

/// Finite group acting on the character lattice Z^n (or Z^n / Z kappa) by
/// g . chi^lambda = chi^{M_g lambda}. The torus is Hom(L, C^x).
class LatticeAction {
 public:
  LatticeAction(int rank, std::optional<IntVec> kernel, std::shared_ptr<const FiniteGroup> group,
                std::vector<IntMatrix> matrices);

  /// Permutation matrices of a group built from permutations of the coordinates.
  static LatticeAction permutation(std::shared_ptr<const FiniteGroup> group, std::optional<IntVec> kernel = std::nullopt);

  int rank() const { return rank_; }
  const std::optional<IntVec>& kernel() const { return kernel_; }
  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  const IntMatrix& matrix(int g) const { return matrices_[static_cast<std::size_t>(g)]; }
  const std::vector<IntMatrix>& matrices() const { return matrices_; }

 private:
  int rank_;
  std::optional<IntVec> kernel_;
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<IntMatrix> matrices_;
};

/// T^H = Hom(Z^n / relations, C^x).
struct SubtorusData {
  IntMatrix relations;                // columns: Hermite basis of the span of (h-1)lambda, kappa
  std::size_t rank_fixed = 0;         // dimension of T^H
  std::vector<std::int64_t> torsion;  // elementary divisors > 1
  std::int64_t component_count = 1;

  /// Defining equations such as "z1 = z3" or "z1*z2*z3 = 1".
  std::vector<std::string> equations() const;
  friend bool operator==(const SubtorusData& a, const SubtorusData& b);
};

SubtorusData subtorus_from_relations(const IntMatrix& relations);
/// Throws NotASubgroup unless h is closed under the table.
SubtorusData fixed_subtorus(const LatticeAction& action, const std::vector<int>& h);
SubtorusData intersect(const SubtorusData& a, const SubtorusData& b);
/// Every point of `inner` lies in `outer`.
bool contains(const SubtorusData& outer, const SubtorusData& inner);

/// Torsion point with coordinates z_j = exp(2 pi i a_j / m).
struct RootPoint {
  std::int64_t m = 1;
  IntVec a;
};

bool on_torus(const LatticeAction& action, const RootPoint& p);
/// Throws PointOffTorus for zero coordinates or when chi^kappa(p) != 1.
void require_on_torus(const LatticeAction& action, const std::vector<GQ>& p);
std::vector<int> stabilizer(const LatticeAction& action, const RootPoint& p);
std::vector<int> stabilizer(const LatticeAction& action, const std::vector<GQ>& p);
bool lies_on(const SubtorusData& s, const RootPoint& p);
bool lies_on(const SubtorusData& s, const std::vector<GQ>& p);
/// g . p for an exact point.
std::vector<GQ> act(const LatticeAction& action, int g, const std::vector<GQ>& p);

/// All m-torsion points of the subtorus, in a fixed order; m must be a
/// multiple of every torsion entry.
std::vector<RootPoint> torsion_points(const SubtorusData& s, std::int64_t m, std::size_t limit = 2000000);

struct Stratum {
  std::vector<int> stabilizer;          // lexicographically least in its conjugacy class
  std::size_t conjugates = 1;           // number of conjugate subgroups
  std::vector<int> normalizer;
  SubtorusData carrier;                 // T^stabilizer
  std::vector<std::size_t> excluded;    // strata with strictly larger stabilizers meeting the carrier
  std::optional<RootPoint> witness;     // a torsion point with exactly this stabilizer
};

struct StratifyOptions {
  std::size_t max_group_order = 120;
};

/// One stratum per conjugacy class of occurring stabilizers, ordered by
/// decreasing carrier dimension and then by stabilizer.
std::vector<Stratum> stratify(const LatticeAction& action, const StratifyOptions& opts = {});

/// Point-set membership: p lies on T^H for a conjugate H of the stratum's
/// stabilizer and on no T^K with K strictly larger. Carriers are prepared once.
class StratumMembership {
 public:
  StratumMembership(const LatticeAction& action, const std::vector<Stratum>& strata);
  bool contains(std::size_t stratum, const RootPoint& p) const;
  bool contains(std::size_t stratum, const std::vector<GQ>& p) const;

 private:
  struct Piece {
    SubtorusData carrier;
    std::vector<SubtorusData> deeper;
  };
  std::vector<std::vector<Piece>> pieces_;
};

/// Index of the stratum whose stabilizer class contains the given subgroup.
std::size_t stratum_of(const LatticeAction& action, const std::vector<Stratum>& strata, const std::vector<int>& stabilizer);

}  // namespace strata::lattice
