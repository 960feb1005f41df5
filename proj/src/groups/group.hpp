#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "exact/linalg.hpp"

namespace strata::groups {

using exact::GQ;

/// Finite group given by its multiplication table; elements are 0..N-1.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}) {}
  /// Validates closure, identity, inverses and associativity (exhaustive for
  /// N <= 48, 10^4 seeded samples beyond).
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names = {});

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  /// e, e1 = (12)(34), e2 = (13)(24), e3 = (14)(23) acting on four letters.
  static FiniteGroup klein_four();
  /// The quaternion group {±1, ±i, ±j, ±k}.
  static FiniteGroup quaternion();
  /// Closure of a set of permutations of {0..n-1} under composition; element 0 is the identity.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators);

  std::size_t order() const { return table_.size(); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int identity() const { return identity_; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  int find(const std::string& name) const;  // -1 when absent
  /// Permutation realization when built from permutations (empty otherwise).
  const std::vector<std::vector<int>>& permutations() const { return perms_; }

  int element_order(int a) const;
  std::vector<int> centralizer(int g) const;
  bool is_subgroup(const std::vector<int>& subset) const;
  std::vector<int> generated(const std::vector<int>& gens) const;  // sorted
  /// Every subgroup as a sorted element list, ordered by (size, elements).
  std::vector<std::vector<int>> all_subgroups() const;
  std::vector<int> conjugate_subgroup(int g, const std::vector<int>& h) const;  // sorted
  std::vector<int> normalizer(const std::vector<int>& h) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> perms_;
};

struct ConjugacyClass {
  int rep = 0;  // smallest member
  std::vector<int> members;
};

/// Classes ordered by representative (the identity class comes first).
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);

/// A subgroup realized as a group of its own, with the embedding into the parent.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> embedding;  // subgroup element -> parent element
};

/// Throws NotASubgroup unless the subset is closed under the table.
Subgroup make_subgroup(const FiniteGroup& g, const std::vector<int>& elements);

struct CharacterTable {
  std::vector<ConjugacyClass> classes;
  std::vector<std::vector<GQ>> characters;  // characters[chi][class]
  std::vector<std::size_t> dims;            // ascending, aligned with characters
};

/// Exact character table over Q(i) from the class algebra; CharFieldError
/// when some value lies outside Q(i).
CharacterTable character_table(const FiniteGroup& g);

/// Row orthogonality with class-size weights.
bool check_orthogonality(const FiniteGroup& g, const CharacterTable& t);

}  // namespace strata::groups
