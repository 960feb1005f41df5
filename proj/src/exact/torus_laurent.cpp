#include "exact/torus_laurent.hpp"

#include "exact/error.hpp"

namespace strata::exact {

TorusLaurent TorusLaurent::constant(LatticeSpec lattice, const GQ& c) {
  IntVec zero(static_cast<std::size_t>(lattice.rank), 0);
  return monomial(std::move(lattice), zero, c);
}

TorusLaurent TorusLaurent::monomial(LatticeSpec lattice, const IntVec& exponent, const GQ& coeff) {
  TorusLaurent f(std::move(lattice));
  f.add_term(exponent, coeff);
  return f;
}

TorusLaurent TorusLaurent::coordinate(LatticeSpec lattice, int j) {
  IntVec e(static_cast<std::size_t>(lattice.rank), 0);
  e.at(static_cast<std::size_t>(j)) = 1;
  return monomial(std::move(lattice), e);
}

void TorusLaurent::add_term(const IntVec& exponent, const GQ& coeff) {
  if (coeff.is_zero()) return;
  IntVec key = lattice_.canonical(exponent);
  auto [it, inserted] = terms_.try_emplace(std::move(key), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TorusLaurent::require_same_lattice(const TorusLaurent& o) const {
  if (!(lattice_ == o.lattice_)) fail(ErrorCode::SpecMismatch, "torus Laurent polynomials over different lattices");
}

TorusLaurent& TorusLaurent::operator+=(const TorusLaurent& o) {
  require_same_lattice(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TorusLaurent& TorusLaurent::operator-=(const TorusLaurent& o) {
  require_same_lattice(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TorusLaurent& TorusLaurent::operator*=(const TorusLaurent& o) {
  require_same_lattice(o);
  TorusLaurent r(lattice_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(vec_add(e1, e2), c1 * c2);
  terms_ = std::move(r.terms_);
  return *this;
}

TorusLaurent TorusLaurent::scaled(const GQ& c) const {
  TorusLaurent r(lattice_);
  for (const auto& [e, x] : terms_) r.add_term(e, x * c);
  return r;
}

TorusLaurent TorusLaurent::transformed(const IntMatrix& m) const {
  TorusLaurent r(lattice_);
  for (const auto& [e, x] : terms_) r.add_term(m.apply(e), x);
  return r;
}

GQ character_value(const IntVec& lambda, const std::vector<GQ>& point) {
  if (lambda.size() != point.size()) fail(ErrorCode::SpecMismatch, "point has wrong rank");
  GQ v(1);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0) continue;
    if (point[j].is_zero()) fail(ErrorCode::PointOffTorus, "zero coordinate");
    v *= point[j].pow(lambda[j]);
  }
  return v;
}

GQ TorusLaurent::eval(const std::vector<GQ>& point) const {
  GQ s(0);
  for (const auto& [e, c] : terms_) s += c * character_value(e, point);
  return s;
}

std::string TorusLaurent::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*z^[";
    for (std::size_t j = 0; j < e.size(); ++j) out += (j ? "," : "") + std::to_string(e[j]);
    out += "]";
  }
  return out;
}

}  // namespace strata::exact
