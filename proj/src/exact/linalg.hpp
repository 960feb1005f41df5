#pragma once

#include <optional>
#include <vector>

#include "exact/gaussian.hpp"

namespace strata::exact {

using GQVec = std::vector<GQ>;

GQVec zero_vec(std::size_t n);
GQVec unit_vec(std::size_t n, std::size_t k);
bool is_zero_vec(const GQVec& v);
void axpy(GQVec& y, const GQ& a, const GQVec& x);  // y += a*x

/// Dense matrix over Q(i).
class GQMatrix {
 public:
  GQMatrix() = default;
  GQMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static GQMatrix identity(std::size_t n);
  static GQMatrix from_rows(const std::vector<GQVec>& rows, std::size_t cols);
  static GQMatrix from_columns(const std::vector<GQVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GQ& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GQ& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  GQVec row(std::size_t r) const;
  GQVec col(std::size_t c) const;
  GQVec apply(const GQVec& v) const;
  GQMatrix transpose() const;
  GQ trace() const;
  bool is_zero() const;

  friend GQMatrix operator*(const GQMatrix& a, const GQMatrix& b);
  friend GQMatrix operator+(const GQMatrix& a, const GQMatrix& b);
  friend GQMatrix operator-(const GQMatrix& a, const GQMatrix& b);
  friend bool operator==(const GQMatrix& a, const GQMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GQ> data_;
};

struct Echelon {
  GQMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

Echelon rref(GQMatrix m);
std::size_t rank(const GQMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<GQVec> nullspace(const GQMatrix& m);
std::optional<GQVec> solve(const GQMatrix& m, const GQVec& b);

/// Subspace of Q(i)^n kept as a reduced echelon basis, supporting exact
/// membership tests and reduction modulo the subspace.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<GQVec>& vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<GQVec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Returns true when v enlarged the subspace.
  bool insert(GQVec v);
  /// v minus its component along the echelon basis (zero iff v is inside).
  GQVec reduce(GQVec v) const;
  bool contains(const GQVec& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b) { return a.contains(b) && b.contains(a); }

 private:
  std::size_t ambient_ = 0;
  std::vector<GQVec> rows_;  // each row has a 1 at its pivot and 0 at other pivots
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace strata::exact
