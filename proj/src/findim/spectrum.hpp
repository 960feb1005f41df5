#pragma once

#include <optional>
#include <string>
#include <vector>

#include "findim/analysis.hpp"

namespace strata::findim {

/// Linear map A -> B given by the images of A's basis.
struct AlgebraMap {
  std::vector<GQVec> images;

  GQVec apply(const GQVec& v) const;
  static AlgebraMap identity(std::size_t dim);
};

/// Chain of two-sided ideals I_1 ⊆ ... ⊆ I_r = A (I_0 = 0 is implicit).
/// Fibers of a strict global chain need not stay strict, so only
/// monotonicity is required.
struct Filtration {
  std::vector<Subspace> chain;
};

struct SpectrumReport {
  bool preserving = false;
  std::string scope = "fiberwise";
  std::string witness;                                  // first failure, empty on success
  std::vector<std::vector<std::size_t>> source_blocks;  // per layer
  std::vector<std::vector<std::size_t>> target_blocks;
  std::vector<std::vector<std::size_t>> assignment;     // per layer: target primitive -> source primitive
};

/// Throws NotAMorphism unless f(b_i b_j) = f(b_i) f(b_j) for all basis pairs.
void require_morphism(const FinDimAlgebra& a, const FinDimAlgebra& b, const AlgebraMap& f);

/// Throws ValidationError unless the chain consists of increasing two-sided ideals ending at A.
void require_filtration(const FinDimAlgebra& a, const Filtration& filt);

/// Every primitive ideal J of B pulls back into exactly one primitive ideal
/// of A, and J -> I is a bijection; with filtrations this is checked on each
/// subquotient I_j/I_{j-1} -> J_j/J_{j-1}.
SpectrumReport verify_spectrum_preserving(const FinDimAlgebra& a, const FinDimAlgebra& b, const AlgebraMap& f,
                                          const std::optional<Filtration>& filt_a = std::nullopt,
                                          const std::optional<Filtration>& filt_b = std::nullopt);

/// The diagonal embedding A -> M_n(A).
bool diag_embedding_check(const FinDimAlgebra& a, std::size_t n, SpectrumReport* report = nullptr);

}  // namespace strata::findim
