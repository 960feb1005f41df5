#pragma once

#include <memory>
#include <vector>

#include "findim/algebra.hpp"

namespace strata::findim {

struct Block {
  std::size_t n = 0;      // the block is M_n(C)
  GQVec idempotent;       // central idempotent of A/rad, quotient coordinates
  GQVec idempotent_lift;  // a preimage in A
};

/// Wedderburn data of a finite dimensional algebra.
struct Structure {
  Subspace radical;
  std::size_t nilpotency = 0;  // least k with rad^k = 0
  std::shared_ptr<QuotientMap> to_semisimple;
  FinDimAlgebra semisimple;
  std::size_t center_dim = 0;
  std::vector<Block> blocks;
  std::vector<Subspace> primitive_ideals;  // kernel of block i, in A coordinates

  std::vector<std::size_t> block_dims() const;  // ascending
};

/// Radical via the trace form of the unitization: x is radical iff
/// Tr(L_x) = 0 and Tr(L_{xy}) = 0 for every y. Nilpotency is verified.
Subspace radical(const FinDimAlgebra& a, std::size_t* nilpotency = nullptr);

/// Full analysis; throws SplitFieldError when the center of A/rad does not
/// split over Q(i).
Structure analyze(const FinDimAlgebra& a);

std::vector<std::size_t> blocks(const FinDimAlgebra& a);

/// Scalar by which each marked central generator acts on block i.
std::vector<GQ> central_character(const FinDimAlgebra& a, const Structure& s, std::size_t block);

/// Basis of the center of an algebra.
std::vector<GQVec> center(const FinDimAlgebra& a);

/// Primitive idempotents of a commutative semisimple subalgebra spanned by
/// `basis` inside `a` (each vector in a's coordinates).
std::vector<GQVec> split_commutative(const FinDimAlgebra& a, const std::vector<GQVec>& basis);

}  // namespace strata::findim
