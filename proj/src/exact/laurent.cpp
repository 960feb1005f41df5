#include "exact/laurent.hpp"

#include "exact/error.hpp"

namespace strata::exact {

LaurentQ LaurentQ::monomial(std::int64_t exponent, const GQ& coeff) {
  LaurentQ r;
  r.add_term(exponent, coeff);
  return r;
}

GQ LaurentQ::coeff(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? GQ(0) : it->second;
}

void LaurentQ::add_term(std::int64_t exponent, const GQ& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentQ LaurentQ::operator-() const {
  LaurentQ r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentQ& LaurentQ::operator*=(const LaurentQ& o) {
  LaurentQ r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
  }
  terms_ = std::move(r.terms_);
  return *this;
}

GQ LaurentQ::eval(const GQ& zeta) const {
  if (zeta.is_zero()) fail(ErrorCode::DivisionByZero, "evaluation at q = 0");
  GQ sum(0);
  for (const auto& [e, c] : terms_) sum += c * zeta.pow(e);
  return sum;
}

std::string LaurentQ::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = c.str();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) coeff = "(" + coeff + ")";
    std::string mono = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
    std::string term;
    if (mono.empty()) {
      term = coeff;
    } else if (c.is_one()) {
      term = mono;
    } else if (c == GQ(-1)) {
      term = "-" + mono;
    } else {
      term = coeff + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out;
}

}  // namespace strata::exact
