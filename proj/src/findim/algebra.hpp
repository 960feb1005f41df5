#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact/linalg.hpp"

namespace strata::findim {

using exact::GQ;
using exact::GQMatrix;
using exact::GQVec;
using exact::Subspace;

inline constexpr std::size_t kMaxDim = 128;

/// Associative algebra over Q(i) given by structure constants
/// b_i b_j = sum_k c_ij^k b_k. Not required to have a unit.
class FinDimAlgebra {
 public:
  using Sparse = std::vector<std::pair<std::size_t, GQ>>;

  FinDimAlgebra() = default;
  explicit FinDimAlgebra(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Sparse& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  void set_product(std::size_t i, std::size_t j, const GQVec& value);
  void set_product(std::size_t i, std::size_t j, Sparse value);

  GQVec basis(std::size_t i) const { return exact::unit_vec(dim_, i); }
  GQVec mul(const GQVec& x, const GQVec& y) const;

  const std::optional<GQVec>& unit() const { return unit_; }
  void set_unit(GQVec u) { unit_ = std::move(u); }
  const std::vector<GQVec>& marked_central() const { return marked_; }
  void set_marked_central(std::vector<GQVec> m) { marked_ = std::move(m); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

  /// Exhaustive for dim <= 32, otherwise `samples` seeded random triples.
  bool is_associative(std::string* witness = nullptr, std::size_t samples = 4000) const;
  bool unit_ok() const;
  /// Every marked element commutes with every basis element.
  bool marked_central_ok(std::string* witness = nullptr) const;

  /// Matrix of left multiplication by x (column j = x b_j).
  GQMatrix left_matrix(const GQVec& x) const;

  static FinDimAlgebra matrix_algebra(std::size_t n);
  static FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b);
  /// M_n(A) with basis E_rs (x) b_i ordered (r, s, i).
  static FinDimAlgebra matrices_over(const FinDimAlgebra& a, std::size_t n);

 private:
  std::size_t dim_ = 0;
  std::vector<Sparse> table_;
  std::optional<GQVec> unit_;
  std::vector<GQVec> marked_;
  std::vector<std::string> labels_;
};

/// Coordinates on J/I for subspaces I of J (of the ambient algebra): the
/// quotient basis is the set of J-echelon rows left over after I.
class QuotientMap {
 public:
  QuotientMap(const Subspace& j, const Subspace& i);

  std::size_t dim() const { return complement_.size(); }
  /// v must lie in J.
  GQVec coords(const GQVec& v) const;
  GQVec lift(const GQVec& c) const;

 private:
  Subspace j_;
  Subspace i_in_j_;
  std::vector<std::size_t> complement_;
};

/// Structure constants of the subquotient J/I; I and J must be two-sided ideals with I inside J.
FinDimAlgebra subquotient(const FinDimAlgebra& a, const QuotientMap& q);

bool is_two_sided_ideal(const FinDimAlgebra& a, const Subspace& s);
/// Span of all products x y with x in s, y in t.
Subspace product_space(const FinDimAlgebra& a, const Subspace& s, const Subspace& t);

}  // namespace strata::findim
