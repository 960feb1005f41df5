#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace strata::exact {

using IntVec = std::vector<std::int64_t>;

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t m);

IntVec vec_add(const IntVec& a, const IntVec& b);
IntVec vec_sub(const IntVec& a, const IntVec& b);
IntVec vec_neg(const IntVec& a);
std::int64_t dot(const IntVec& a, const IntVec& b);

/// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const;
  IntVec col(std::size_t c) const;
  IntMatrix transpose() const;
  IntVec apply(const IntVec& v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  bool is_square() const { return rows_ == cols_; }
  /// Fraction-free (Bareiss) determinant.
  std::int64_t determinant() const;
  /// Exact inverse of a unimodular matrix; nullopt when |det| != 1.
  std::optional<IntMatrix> unimodular_inverse() const;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Z^n or Z^n / Z*kernel, with a unique representative per class.
struct LatticeSpec {
  int rank = 0;
  std::optional<IntVec> kernel;

  /// For a kernel vector k, the last index j with k_j != 0 is reduced into
  /// [0, |k_j|). With k = (1,...,1) this makes the last coordinate 0.
  IntVec canonical(const IntVec& v) const;
  bool is_canonical(const IntVec& v) const { return canonical(v) == v; }

  friend bool operator==(const LatticeSpec& a, const LatticeSpec& b) = default;
};

}  // namespace strata::exact
