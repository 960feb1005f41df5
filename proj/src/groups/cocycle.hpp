#pragma once

#include <string>
#include <vector>

#include "findim/algebra.hpp"
#include "groups/group.hpp"

namespace strata::groups {

/// Normalized 2-cocycle with values in {1, -1, i, -i}.
struct Cocycle2 {
  std::vector<std::vector<GQ>> values;  // values[g][h]

  static Cocycle2 trivial(const FiniteGroup& g);
  const GQ& operator()(int g, int h) const { return values[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
};

/// False with a description of the first violated condition.
bool verify_cocycle(const FiniteGroup& g, const Cocycle2& c, std::string* witness = nullptr);

/// c(g, h) = rho(g) rho(h) rho(gh)^-1 for a projective representation;
/// InvalidCocycle when some quotient is not a scalar.
Cocycle2 cocycle_from_projective(const FiniteGroup& g, const std::vector<exact::GQMatrix>& rho);

/// rho(1) = I, rho(e1) = diag(i, -i), rho(e2) = [[0,1],[-1,0]], rho(e3) = [[0,i],[i,0]] on klein_four().
std::vector<exact::GQMatrix> rho_quaternion_matrices();
Cocycle2 rho_quaternion();

Cocycle2 restrict_cocycle(const Cocycle2& c, const Subgroup& h);

/// g is regular iff c(g, h) = c(h, g) for every h centralizing g.
bool is_regular(const FiniteGroup& g, const Cocycle2& c, int x);
std::size_t regular_class_count(const FiniteGroup& g, const Cocycle2& c);

/// Basis delta_g with delta_g delta_h = c(g, h) delta_gh.
findim::FinDimAlgebra twisted_group_algebra(const FiniteGroup& g, const Cocycle2& c);

/// Ascending block sizes of the twisted group algebra, cross-checked against
/// the regular class count. InvalidCocycle / CharFieldError.
std::vector<std::size_t> twisted_blocks(const FiniteGroup& g, const Cocycle2& c);

}  // namespace strata::groups
