#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exquo/exquo.hpp"
#include "findim/fiber.hpp"

namespace strata::glue {

using exact::GQ;
using exact::IntVec;
using exquo::Coset;
using findim::LinearSubvariety;

struct PointSet {
  std::vector<std::vector<GQ>> points;
};

/// Linear pieces live on affine bases, cosets on tori; points on either.
/// Linear and coset pieces are treated as irreducible.
using Piece = std::variant<Coset, LinearSubvariety, PointSet>;

/// Finite union of pieces.
struct Locus {
  std::vector<Piece> pieces;

  bool contains(const std::vector<GQ>& p) const;
  bool empty() const { return pieces.empty(); }
  std::string str() const;
};

/// Affine space, or a torus cut out by chi^k = 1 for each kernel character.
/// For torus quotients points are representatives and loci must be stable.
struct Base {
  enum class Kind { Affine, Torus };
  Kind kind = Kind::Affine;
  int dim = 1;
  std::vector<IntVec> kernels;
  std::optional<Locus> support;  // restrict to a closed subset
  std::string note;              // e.g. the acting group of a quotient

  bool on_base(const std::vector<GQ>& p) const;
  /// Throws PointOffBase.
  void require(const std::vector<GQ>& p) const;
};

/// `extra` more copies of the points of locus minus `minus`.
struct Doubling {
  Locus locus;
  Locus minus;
  std::size_t extra = 1;
};

struct GluedSpace {
  Base base;
  std::vector<Doubling> doubling;

  /// Copy 0 is the base sheet; copies 1, 2, ... follow the doubling list.
  std::size_t copies() const;
  /// Index into `doubling` of an extra copy (c >= 1).
  std::size_t doubling_of(std::size_t copy) const;
};

/// LocusOffBase when a piece does not fit the base.
GluedSpace build_glued(Base base, std::vector<Doubling> doubling);

/// delta(x) = 1 + sum of extra copies over doublings whose locus holds x.
std::size_t multiplicity_at(const GluedSpace& s, const std::vector<GQ>& x);

struct GluedPoint {
  std::size_t copy = 0;
  std::vector<GQ> x;
};

bool is_valid_point(const GluedSpace& s, const GluedPoint& p);

/// Points of the listed charts lying over locus minus `minus`.
struct SetDescriptor {
  std::vector<std::size_t> charts{0};
  Locus locus;
  Locus minus;
};

/// A point lies in the closure of S when some chart containing it has it
/// in the Zariski closure of S restricted to that chart.
bool closure_contains(const GluedSpace& s, const SetDescriptor& set, const GluedPoint& candidate);

/// Finite product; coordinates are concatenated.
struct ProductSpace {
  std::vector<GluedSpace> factors;

  int dim() const;
};

struct ProductPoint {
  std::vector<std::size_t> copies;
  std::vector<GQ> x;
};

struct ProductSet {
  std::vector<std::vector<std::size_t>> charts;  // one copy index per factor, per chart
  Locus locus;                                   // in product coordinates
  Locus minus;
};

bool closure_contains(const ProductSpace& s, const ProductSet& set, const ProductPoint& candidate);

/// Model of a space as a disjoint union of glued spaces.
struct SpaceModel {
  std::string name;
  std::vector<GluedSpace> parts;
};

struct ModelInvariants {
  std::size_t components = 0;
  bool non_separated_pair = false;
  std::vector<std::size_t> multiplicity_profile;  // delta on each doubled locus, ascending
};

struct Comparison {
  ModelInvariants first, second;
  std::vector<std::string> differing;
  std::string verdict;  // "not homeomorphic" or "indistinguishable at this resolution"
};

ModelInvariants model_invariants(const SpaceModel& m);
Comparison distinguishing_invariants(const SpaceModel& a, const SpaceModel& b);

/// Glued model of an extended quotient from theta_glue_data.
GluedSpace from_theta(const exquo::ExtendedQuotient& eq, const std::vector<exquo::DoublingInstruction>& data);

/// Piece-level helpers exposed for tests.
bool piece_contains(const Piece& p, const std::vector<GQ>& x);
bool piece_within(const Base& base, const Piece& inner, const Locus& outer);
bool pieces_meet(const Base& base, const Piece& a, const Piece& b);

}  // namespace strata::glue
