#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "exact/gaussian.hpp"

namespace strata::exact {

/// Laurent polynomial in q with Gaussian rational coefficients. No stored
/// coefficient is ever zero.
class LaurentQ {
 public:
  using Terms = std::map<std::int64_t, GQ>;

  LaurentQ() = default;
  LaurentQ(const GQ& c) { add_term(0, c); }  // NOLINT(google-explicit-constructor)
  LaurentQ(std::int64_t c) : LaurentQ(GQ(c)) {}  // NOLINT(google-explicit-constructor)

  static LaurentQ monomial(std::int64_t exponent, const GQ& coeff = GQ(1));
  static LaurentQ q() { return monomial(1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GQ coeff(std::int64_t exponent) const;

  void add_term(std::int64_t exponent, const GQ& coeff);

  LaurentQ operator-() const;
  LaurentQ& operator+=(const LaurentQ& o);
  LaurentQ& operator-=(const LaurentQ& o);
  LaurentQ& operator*=(const LaurentQ& o);

  friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
  friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }
  friend LaurentQ operator*(LaurentQ a, const LaurentQ& b) { return a *= b; }
  friend bool operator==(const LaurentQ& a, const LaurentQ& b) { return a.terms_ == b.terms_; }

  /// Substitutes q := zeta. zeta = 0 is always rejected since q lives in C^x.
  GQ eval(const GQ& zeta) const;

  /// Human readable, e.g. "q^2-2*q+1" (descending exponents).
  std::string str() const;

 private:
  Terms terms_;
};

inline LaurentQ laurent_mul(const LaurentQ& a, const LaurentQ& b) { return a * b; }
inline GQ laurent_eval(const LaurentQ& a, const GQ& zeta) { return a.eval(zeta); }

}  // namespace strata::exact
