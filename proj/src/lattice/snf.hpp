#pragma once

#include <vector>

#include "exact/int_matrix.hpp"

namespace strata::lattice {

using exact::IntMatrix;
using exact::IntVec;

struct SmithForm {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal, d_1 | d_2 | ... >= 0
  IntMatrix v;  // unimodular, cols x cols
  std::size_t rank = 0;

  std::vector<std::int64_t> diagonal() const;
};

/// U M V = D.
SmithForm smith_normal_form(const IntMatrix& m);

/// Echelon basis of the column span of m (pivot rows strictly increasing,
/// positive pivots, entries above each pivot reduced into [0, pivot)).
std::vector<IntVec> column_hermite_basis(const IntMatrix& m);

/// Invariants of Z^n / (column span): free rank and elementary divisors > 1.
struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;
  friend bool operator==(const QuotientInvariants&, const QuotientInvariants&) = default;
};
QuotientInvariants quotient_invariants(const IntMatrix& relations);

}  // namespace strata::lattice
