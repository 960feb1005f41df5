#pragma once

#include <map>
#include <string>
#include <vector>

#include "exact/gaussian.hpp"
#include "exact/int_matrix.hpp"

namespace strata::exact {

/// Element of O(T) = C[L] for L = Z^n or Z^n / Z*kernel. Exponent keys are
/// always canonical lattice representatives.
class TorusLaurent {
 public:
  using Terms = std::map<IntVec, GQ>;

  TorusLaurent() = default;
  explicit TorusLaurent(LatticeSpec lattice) : lattice_(std::move(lattice)) {}

  static TorusLaurent constant(LatticeSpec lattice, const GQ& c);
  static TorusLaurent monomial(LatticeSpec lattice, const IntVec& exponent, const GQ& coeff = GQ(1));
  /// z_j (j zero-based).
  static TorusLaurent coordinate(LatticeSpec lattice, int j);

  const LatticeSpec& lattice() const { return lattice_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const IntVec& exponent, const GQ& coeff);

  TorusLaurent& operator+=(const TorusLaurent& o);
  TorusLaurent& operator-=(const TorusLaurent& o);
  TorusLaurent& operator*=(const TorusLaurent& o);
  friend TorusLaurent operator+(TorusLaurent a, const TorusLaurent& b) { return a += b; }
  friend TorusLaurent operator-(TorusLaurent a, const TorusLaurent& b) { return a -= b; }
  friend TorusLaurent operator*(TorusLaurent a, const TorusLaurent& b) { return a *= b; }
  friend bool operator==(const TorusLaurent& a, const TorusLaurent& b) {
    return a.lattice_ == b.lattice_ && a.terms_ == b.terms_;
  }

  TorusLaurent scaled(const GQ& c) const;
  /// Exponent substitution lambda -> M*lambda (the action g . chi^lambda = chi^{M lambda}).
  TorusLaurent transformed(const IntMatrix& m) const;
  /// Value at a point t of the torus: chi^lambda(t) = prod t_j^{lambda_j}.
  GQ eval(const std::vector<GQ>& point) const;

  std::string str() const;

 private:
  void require_same_lattice(const TorusLaurent& o) const;

  LatticeSpec lattice_;
  Terms terms_;
};

/// chi^lambda(t) for an exact point.
GQ character_value(const IntVec& lambda, const std::vector<GQ>& point);

}  // namespace strata::exact
