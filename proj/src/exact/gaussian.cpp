#include "exact/gaussian.hpp"

#include <cctype>
#include <ostream>

#include "exact/error.hpp"

namespace strata::exact {

namespace {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

mpq_class parse_rational(std::string_view s, std::string_view whole) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational in '" + std::string(whole) + "'");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      fail(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
    }
  }
  std::string t(s);
  if (t[0] == '+') t.erase(0, 1);
  mpq_class q;
  if (q.set_str(t, 10) != 0) fail(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
  if (q.get_den() == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

// Imaginary term body without the trailing "i": "", "+", "-", "3", "-1/2", "2*".
mpq_class parse_imag(std::string_view body, std::string_view whole) {
  std::string t(body);
  if (!t.empty() && t.back() == '*') t.pop_back();
  if (t.empty() || t == "+") return 1;
  if (t == "-") return -1;
  return parse_rational(t, whole);
}

}  // namespace

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(ErrorCode::ParseError, "empty scalar");
  if (s.back() != 'i') return {parse_rational(s, text), 0};

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one and not part of a fraction.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0, parse_imag(body, text)};
  return {parse_rational(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of 0");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational GaussianRational::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  mpq_class mag = abs(im_);
  imag = (mag == 1) ? "i" : rational_str(mag) + "*i";
  if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
  return rational_str(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
}

GaussianRational gq_arith(const GaussianRational& a, const GaussianRational& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Inv: return a.inverse();
    case ArithOp::Neg: return -a;
  }
  return a;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

}  // namespace strata::exact
