#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace strata::exact {

/// Element of Q(i) with both parts kept as canonical GMP fractions.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(std::int64_t re) : re_(static_cast<long>(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }

  /// Accepts "3", "-1/2", "i", "-i", "2/3*i", "1/2+1/3*i", "1-i", with optional spaces.
  static GaussianRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;
  GaussianRational pow(std::int64_t e) const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im); only used for canonical ordering of reports.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  /// Canonical text form: "a/b", "c/d*i", "a/b+c/d*i" or "a/b-c/d*i".
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

using GQ = GaussianRational;

enum class ArithOp { Add, Mul, Inv, Neg };

/// Single entry point mirroring the scalar operation table; binary ops use both
/// arguments, unary ops ignore `b`.
GaussianRational gq_arith(const GaussianRational& a, const GaussianRational& b, ArithOp op);

std::ostream& operator<<(std::ostream& os, const GaussianRational& x);

}  // namespace strata::exact
