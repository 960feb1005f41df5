#include "lattice/snf.hpp"

#include <cstdlib>
#include <numeric>

#include "exact/error.hpp"

namespace strata::lattice {

using exact::checked_add;
using exact::checked_mul;

namespace {

// row_i += k * row_j
void add_row(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t k) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = checked_add(m(i, c), checked_mul(k, m(j, c)));
}

void add_col(IntMatrix& m, std::size_t i, std::size_t j, std::int64_t k) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, i) = checked_add(m(r, i), checked_mul(k, m(r, j)));
}

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<std::int64_t> SmithForm::diagonal() const {
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < std::min(d.rows(), d.cols()); ++k) out.push_back(d(k, k));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = s.d;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the remaining block becomes the pivot
    auto place_pivot = [&]() {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (bi == rows || std::llabs(d(i, j)) < std::llabs(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return false;
      swap_rows(d, t, bi);
      swap_rows(s.u, t, bi);
      swap_cols(d, t, bj);
      swap_cols(s.v, t, bj);
      return true;
    };
    if (!place_pivot()) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        std::int64_t q = floor_div(d(i, t), d(t, t));
        add_row(d, i, t, -q);
        add_row(s.u, i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        std::int64_t q = floor_div(d(t, j), d(t, t));
        add_col(d, j, t, -q);
        add_col(s.v, j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        place_pivot();
        continue;
      }
      // divisibility: fold an offending row into the pivot row
      bool folded = false;
      for (std::size_t i = t + 1; i < rows && !folded; ++i)
        for (std::size_t j = t + 1; j < cols && !folded; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, 1);
            add_row(s.u, t, i, 1);
            folded = true;
          }
      if (!folded) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < rows; ++c) s.u(t, c) = -s.u(t, c);
    }
    ++s.rank;
  }
  return s;
}

std::vector<IntVec> column_hermite_basis(const IntMatrix& m) {
  IntMatrix a = m;
  std::vector<IntVec> out;
  std::size_t c0 = 0;
  for (std::size_t r = 0; r < a.rows() && c0 < a.cols(); ++r) {
    // gcd-reduce row r across columns c0.. into column c0
    for (;;) {
      std::size_t best = a.cols();
      for (std::size_t j = c0; j < a.cols(); ++j)
        if (a(r, j) != 0 && (best == a.cols() || std::llabs(a(r, j)) < std::llabs(a(r, best)))) best = j;
      if (best == a.cols()) break;
      swap_cols(a, c0, best);
      bool done = true;
      for (std::size_t j = c0 + 1; j < a.cols(); ++j) {
        if (a(r, j) == 0) continue;
        add_col(a, j, c0, -floor_div(a(r, j), a(r, c0)));
        if (a(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c0) == 0) continue;
    if (a(r, c0) < 0)
      for (std::size_t i = 0; i < a.rows(); ++i) a(i, c0) = -a(i, c0);
    ++c0;
  }
  for (std::size_t j = 0; j < c0; ++j) out.push_back(a.col(j));
  // reduce earlier columns by later pivots
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::size_t pr = 0;
    while (out[j][pr] == 0) ++pr;
    for (std::size_t k = 0; k < j; ++k) {
      std::int64_t q = floor_div(out[k][pr], out[j][pr]);
      if (q != 0)
        for (std::size_t i = 0; i < out[k].size(); ++i) out[k][i] = checked_add(out[k][i], checked_mul(-q, out[j][i]));
    }
  }
  return out;
}

QuotientInvariants quotient_invariants(const IntMatrix& relations) {
  SmithForm s = smith_normal_form(relations);
  QuotientInvariants q;
  q.free_rank = relations.rows() - s.rank;
  for (std::size_t k = 0; k < s.rank; ++k)
    if (s.d(k, k) > 1) q.torsion.push_back(s.d(k, k));
  return q;
}

}  // namespace strata::lattice
