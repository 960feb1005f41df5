#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exact/int_matrix.hpp"

namespace strata::weyl {

using exact::IntVec;
using exact::LatticeSpec;

/// Permutation of {0..n-1}; perm[i] is the image of i.
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_compose(const Perm& a, const Perm& b);  // a after b
Perm perm_inverse(const Perm& p);
/// w . lambda, moving coordinate i to position w(i).
IntVec perm_apply(const Perm& w, const IntVec& lambda);

enum class Family { GL, SL };

struct RootSystemSpec {
  Family family = Family::GL;
  int n = 2;
  LatticeSpec lattice;
  std::vector<IntVec> positive_roots;  // e_i - e_j, i < j

  static RootSystemSpec make(Family family, int n);
  /// "A_GL:2", "A_SL:3".
  static RootSystemSpec parse(std::string_view name);
  std::string name() const;
  friend bool operator==(const RootSystemSpec& a, const RootSystemSpec& b) {
    return a.family == b.family && a.n == b.n;
  }
};

/// (lambda, w) in X*(T) x| W; lambda is always the canonical lattice representative.
struct Element {
  IntVec translation;
  Perm perm;

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

struct ReducedWord {
  std::int64_t omega_power = 0;
  std::vector<int> word;  // affine simple generator indices, 0 = s0

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
};

enum class DescentRule { Lowest, Highest };

/// Extended affine Weyl group of type A with BFS length. Copies share one
/// lazily grown ball cache.
class AffineWeyl {
 public:
  static constexpr int kDefaultMaxRadius = 12;

  explicit AffineWeyl(RootSystemSpec spec, int max_radius = kDefaultMaxRadius);
  AffineWeyl(Family family, int n, int max_radius = kDefaultMaxRadius)
      : AffineWeyl(RootSystemSpec::make(family, n), max_radius) {}

  const RootSystemSpec& spec() const { return spec_; }
  int rank() const { return spec_.n; }
  int max_radius() const { return max_radius_; }
  int generator_count() const { return spec_.n; }

  Element identity() const;
  Element simple(int i) const;
  const Element& omega() const { return omega_; }
  Element omega_power(std::int64_t a) const;
  Element make(IntVec translation, Perm perm) const;

  /// Throws SpecMismatch unless x is a well-formed element of this group.
  void check(const Element& x) const;
  Element compose(const Element& x, const Element& y) const;
  Element invert(const Element& x) const;

  /// Class of x in Omega = X*(T)/(root lattice): sum of translation
  /// coordinates (GL) or that sum mod n (SL).
  std::int64_t omega_class(const Element& x) const;
  /// omega^{-class(x)} x, the Coxeter part of x.
  Element coxeter_part(const Element& x) const;

  int length(const Element& x) const;
  /// Iwahori-Matsumoto formula; independent of the BFS cache.
  int closed_form_length(const Element& x) const;
  ReducedWord reduced_word(const Element& x, DescentRule rule = DescentRule::Lowest) const;
  Element from_word(const ReducedWord& w) const;

  /// Coxeter length <= radius, times Omega (all of Omega for SL, omega^{-1..1} for GL).
  std::vector<Element> ball(int radius) const;
  /// Elements of the Coxeter part of length exactly k.
  std::vector<Element> sphere(int k) const;

 private:
  struct Cache;
  void grow_to(int radius) const;
  std::optional<int> cached_length(const Element& y, int up_to) const;

  RootSystemSpec spec_;
  int max_radius_;
  std::vector<Element> generators_;
  Element omega_;
  Element omega_inv_;
  std::shared_ptr<Cache> cache_;
};

std::string element_str(const Element& x);

}  // namespace strata::weyl
