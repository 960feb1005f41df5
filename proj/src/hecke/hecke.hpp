#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "exact/laurent.hpp"
#include "exact/torus_laurent.hpp"
#include "weyl/weyl.hpp"

namespace strata::hecke {

using exact::GQ;
using exact::LaurentQ;
using weyl::AffineWeyl;
using weyl::Element;

/// Coefficients of T_x T_s = a T_{xs} + b T_x when l(xs) < l(x).
/// The genuine algebra uses a = q, b = q - 1.
struct DescentRule {
  LaurentQ shift = LaurentQ::q();
  LaurentQ stay = LaurentQ::q() - 1;

  static DescentRule standard() { return {}; }
};

enum class Peel { Right, Left };

struct MulOptions {
  Peel peel = Peel::Right;
  weyl::DescentRule word_rule = weyl::DescentRule::Lowest;
  DescentRule rule = DescentRule::standard();
};

class HeckeElt {
 public:
  using Terms = std::map<Element, LaurentQ>;

  explicit HeckeElt(std::shared_ptr<const AffineWeyl> group) : group_(std::move(group)) {}
  static HeckeElt basis(std::shared_ptr<const AffineWeyl> group, const Element& x, const LaurentQ& c = LaurentQ(1));
  static HeckeElt scalar(std::shared_ptr<const AffineWeyl> group, const LaurentQ& c);

  const AffineWeyl& group() const { return *group_; }
  const std::shared_ptr<const AffineWeyl>& group_ptr() const { return group_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Element& x, const LaurentQ& c);
  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  HeckeElt scaled(const LaurentQ& c) const;
  friend bool operator==(const HeckeElt& a, const HeckeElt& b) { return a.terms_ == b.terms_; }

  /// Largest length in the support (0 for the zero element).
  int max_length() const;
  std::string str() const;

 private:
  void require_same(const HeckeElt& o) const;

  std::shared_ptr<const AffineWeyl> group_;
  Terms terms_;
};

HeckeElt hecke_mul(const HeckeElt& a, const HeckeElt& b, const MulOptions& opts = {});

/// Element of O(T) x| W stored as w -> coefficient function f_w, i.e. sum f_w w.
class CrossedProductElt {
 public:
  using Terms = std::map<weyl::Perm, exact::TorusLaurent>;

  explicit CrossedProductElt(exact::LatticeSpec lattice) : lattice_(std::move(lattice)) {}
  /// chi^lambda w.
  static CrossedProductElt basis(exact::LatticeSpec lattice, const exact::IntVec& lambda, const weyl::Perm& w,
                                 const GQ& c = GQ(1));
  static CrossedProductElt function(const exact::TorusLaurent& f);

  const exact::LatticeSpec& lattice() const { return lattice_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const weyl::Perm& w, const exact::TorusLaurent& f);
  GQ coefficient(const exact::IntVec& lambda, const weyl::Perm& w) const;

  CrossedProductElt& operator+=(const CrossedProductElt& o);
  friend CrossedProductElt operator+(CrossedProductElt a, const CrossedProductElt& b) { return a += b; }
  friend CrossedProductElt operator*(const CrossedProductElt& a, const CrossedProductElt& b);
  friend bool operator==(const CrossedProductElt& a, const CrossedProductElt& b) {
    return a.lattice_ == b.lattice_ && a.terms_ == b.terms_;
  }
  std::string str() const;

 private:
  exact::LatticeSpec lattice_;
  Terms terms_;
};

/// w acting on O(T): chi^lambda -> chi^{w lambda}.
exact::TorusLaurent permute_function(const weyl::Perm& w, const exact::TorusLaurent& f);

/// Coefficientwise q := zeta; at zeta = 1, T_(lambda,w) maps to chi^lambda w.
CrossedProductElt specialize(const HeckeElt& a, const GQ& zeta);

struct QuadraticReport {
  std::vector<int> generators;
  std::vector<bool> passed;
  bool all_passed() const;
};

/// Checks T_x (T_s - q)(T_s + 1) = 0 for every affine simple s and every x of
/// Coxeter length <= radius.
QuadraticReport verify_quadratic(std::shared_ptr<const AffineWeyl> group, int radius,
                                 const MulOptions& opts = {});

/// Throws NotWInvariant unless f is fixed by the finite Weyl group; then
/// reports whether f commutes with every sample.
bool verify_central_q1(const AffineWeyl& group, const exact::TorusLaurent& f,
                       const std::vector<CrossedProductElt>& samples);

struct SuiteReport {
  std::string spec;
  int radius = 0;
  bool quadratic = false;
  int associativity_triples = 0;
  int associativity_failures = 0;
  int word_independence_pairs = 0;
  int word_independence_failures = 0;
  int specialization_pairs = 0;
  int specialization_failures = 0;
  int support_violations = 0;
  bool passed() const;
};

/// Randomized relation suite on basis elements of length <= radius.
SuiteReport run_suite(const std::string& spec_name, int radius, int triples, int pairs, std::uint64_t seed);

}  // namespace strata::hecke
