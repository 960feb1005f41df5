#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "findim/fiber.hpp"

namespace strata::findim {

/// Element of a pattern algebra: entry index -> polynomial in the base
/// coordinates (Laurent on a torus, nonnegative exponents on affine space).
using PatternElement = std::map<std::size_t, exact::TorusLaurent>;

/// Laurent polynomial in t with pattern-element coefficients.
using PatternLaurent = std::map<std::int64_t, PatternElement>;

struct MorphismStep {
  std::string left, right;
  bool forward = true;               // left -> right; otherwise right -> left
  std::optional<PatternMap> map;     // none: the identity of one algebra
  std::optional<std::vector<IdealPattern>> filtration_source;
  std::optional<std::vector<IdealPattern>> filtration_target;

  const std::string& source() const { return forward ? left : right; }
  const std::string& target() const { return forward ? right : left; }
};

/// Psi sends the j-th base coordinate to psi[j] in Z(A)[t, t^-1]; evaluating
/// at zeta and eta must reproduce the declared k-actions.
struct VariationStep {
  std::string algebra;
  std::vector<PatternLaurent> psi;
  GQ zeta{1}, eta{1};
  std::vector<PatternElement> action_zeta, action_eta;
};

using CertificateStep = std::variant<MorphismStep, VariationStep>;

struct EquivalenceCertificate {
  std::map<std::string, FiberDescriptor> algebras;
  std::string start, end;
  std::vector<CertificateStep> steps;
};

struct StepVerdict {
  std::size_t index = 0;
  std::string kind;  // "morphism" or "variation"
  std::string description;
  bool ok = true;
  std::size_t samples_checked = 0;
  std::vector<std::string> failures;  // one line per offending sample
};

struct CertificateReport {
  bool accepted = false;
  std::string scope = "fiberwise";
  std::string chain_error;
  std::vector<StepVerdict> steps;
};

/// Checks the chain of steps, then every step at every sample point.
CertificateReport verify_certificate(const EquivalenceCertificate& cert, const std::vector<std::vector<GQ>>& samples);

/// Value of a pattern element at a point, in the coordinates of the fiber.
GQVec evaluate_element(const PatternAlgebra& a, const PatternFiber& f, const PatternElement& x, const std::vector<GQ>& p);

/// Exact check that x commutes with every matrix unit allowed by the pattern.
bool is_central(const PatternAlgebra& a, const PatternElement& x, std::string* witness = nullptr);

}  // namespace strata::findim
