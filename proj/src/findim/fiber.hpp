#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exact/torus_laurent.hpp"
#include "findim/spectrum.hpp"
#include "groups/cocycle.hpp"
#include "lattice/action.hpp"

namespace strata::findim {

/// Affine space C^n or the torus (C^x)^n.
struct BaseVariety {
  enum class Kind { Affine, Torus };
  Kind kind = Kind::Affine;
  int dim = 1;

  /// Throws PointOffBase.
  void require(const std::vector<GQ>& p) const;
  friend bool operator==(const BaseVariety&, const BaseVariety&) = default;
};

/// Y = { p : a_j . p = b_j for all j }.
struct LinearSubvariety {
  std::vector<GQVec> normals;
  std::vector<GQ> values;

  bool contains(const std::vector<GQ>& p) const;
  friend bool operator==(const LinearSubvariety&, const LinearSubvariety&) = default;
};

/// Entry of a matrix pattern: 0, O(X), the ideal I_Y, or O(Y) = O(X)/I_Y.
enum class EntryKind { Zero, Unit, IdealY, QuotientY };

std::string entry_kind_name(EntryKind k);
EntryKind parse_entry_kind(const std::string& s);
/// Whether the evaluation of this entry at p is nonzero.
bool entry_present(EntryKind k, bool p_in_y);

struct PatternBlock {
  std::size_t n = 1;
  std::vector<EntryKind> entries;  // row-major n x n

  EntryKind at(std::size_t r, std::size_t s) const { return entries[r * n + s]; }
  friend bool operator==(const PatternBlock&, const PatternBlock&) = default;
};

/// Direct sum of matrix algebras whose entries range over O(X), I_Y or O(Y).
/// Entries are numbered block by block, row-major.
struct PatternAlgebra {
  BaseVariety base;
  LinearSubvariety y;
  std::vector<PatternBlock> blocks;

  std::size_t entry_count() const;
  /// (block, row, column) of a global entry index.
  std::tuple<std::size_t, std::size_t, std::size_t> entry(std::size_t e) const;
  std::size_t entry_index(std::size_t block, std::size_t r, std::size_t s) const;
  EntryKind kind(std::size_t e) const;

  /// Throws ValidationError unless the pattern is closed under multiplication.
  void validate() const;
  friend bool operator==(const PatternAlgebra&, const PatternAlgebra&) = default;
};

/// A sub-pattern of the same shape; must be a two-sided ideal.
struct IdealPattern {
  std::vector<EntryKind> entries;
  friend bool operator==(const IdealPattern&, const IdealPattern&) = default;
};

struct PatternFiber {
  FinDimAlgebra algebra;
  std::vector<std::optional<std::size_t>> basis_of_entry;  // fiber basis index of each entry
};

/// Image of the algebra under evaluation at p.
PatternFiber pattern_fiber(const PatternAlgebra& a, const std::vector<GQ>& p);
Subspace ideal_fiber(const PatternAlgebra& a, const PatternFiber& f, const IdealPattern& ideal, const std::vector<GQ>& p);
void validate_ideal(const PatternAlgebra& a, const IdealPattern& ideal);

/// k-linear map between pattern algebras sending entry e to a combination
/// of target entries.
struct PatternMap {
  std::vector<std::vector<std::pair<std::size_t, GQ>>> images;
  friend bool operator==(const PatternMap&, const PatternMap&) = default;
};

AlgebraMap pattern_map_fiber(const PatternAlgebra& a, const PatternFiber& fa, const PatternAlgebra& b,
                             const PatternFiber& fb, const PatternMap& f);

/// Coefficient block of a crossed product: C, or M_n(C) with the group
/// acting by conjugation through a projective representation.
struct Coefficient {
  std::string name = "scalar";
  std::size_t n = 1;
  std::vector<GQMatrix> rho;  // empty for scalar

  static Coefficient scalar() { return {}; }
  static Coefficient m2_rho();
  static Coefficient by_name(const std::string& name);
};

/// (O(T) (x) coefficient) x| G, optionally twisted by a 2-cocycle.
struct CrossedProduct {
  std::shared_ptr<const lattice::LatticeAction> action;
  Coefficient coefficient;
  std::optional<groups::Cocycle2> cocycle;

  void validate() const;
};

struct ConstantAlgebra {
  FinDimAlgebra algebra;
};

struct FiberDescriptor {
  std::variant<CrossedProduct, PatternAlgebra, ConstantAlgebra> body;

  /// "crossed_product", "twisted_crossed_product", "matrix_ideal_pattern" or "structure_constants".
  std::string kind() const;
  void validate() const;
};

/// Fiber over the orbit of p for crossed products, the evaluation image for
/// patterns. Marked central elements carry the k-action at the point.
FinDimAlgebra build_fiber(const FiberDescriptor& desc, const std::vector<GQ>& p);
FinDimAlgebra crossed_product_fiber(const CrossedProduct& cp, const std::vector<GQ>& p);

}  // namespace strata::findim
