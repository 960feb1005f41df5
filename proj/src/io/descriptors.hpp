#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exact/error.hpp"
#include "exquo/exquo.hpp"
#include "findim/certificate.hpp"
#include "glue/glue.hpp"
#include "json.hpp"

namespace strata::io {

using exact::GQ;
using exact::IntVec;
using nlohmann::json;

struct ThetaDoc {
  GQ v{1};
  std::string shift = "zero";  // "zero" or "gl2-iwahori"

  exquo::ThetaShift build(const exquo::ExtendedQuotient& eq) const;
};

/// Either permutation generators or a full multiplication table.
struct GroupDoc {
  std::vector<std::vector<int>> generators;  // 0-based images (1-based in JSON)
  std::vector<std::vector<int>> table;       // 0-based
  std::vector<std::string> names;            // table form only, optional

  groups::FiniteGroup build() const;
};

struct ActionDoc {
  std::string name;
  int rank = 0;
  GroupDoc group;
  std::optional<std::vector<exact::IntMatrix>> generator_matrices;  // generator form; default permutation matrices
  std::map<std::string, exact::IntMatrix> matrices;                 // table form: one per element name
  std::optional<IntVec> kernel;
  std::optional<ThetaDoc> theta;
  std::shared_ptr<const lattice::LatticeAction> action;        // built and validated
};

struct CocycleDoc {
  std::string name;
  GroupDoc group;
  std::map<std::string, exact::GQMatrix> projective;  // element name -> matrix
  std::map<std::pair<std::string, std::string>, GQ> values;  // entries different from 1

  /// The cocycle on the given group, matched by element names.
  groups::Cocycle2 on(const groups::FiniteGroup& g) const;
};

struct AlgebraDoc {
  std::string name;
  findim::FiberDescriptor desc;
  // sources kept for serialization of crossed products
  std::optional<ActionDoc> action;
  std::optional<CocycleDoc> cocycle;
};

struct CertificateDoc {
  std::string name;
  std::map<std::string, AlgebraDoc> algebras;
  findim::EquivalenceCertificate cert;
  std::vector<std::vector<GQ>> samples;
};

struct SetDoc {
  std::vector<std::vector<std::size_t>> charts;  // 0-based copies, one per factor
  glue::Locus locus;
  glue::Locus minus;
};

struct GluedModelDoc {
  enum class Shape { Single, Union, Product };
  std::string name;
  Shape shape = Shape::Single;
  std::vector<glue::GluedSpace> spaces;  // one, the parts, or the factors
  std::map<std::string, SetDoc> sets;
  std::map<std::string, std::vector<GQ>> points;

  glue::SpaceModel model() const;
  glue::ProductSpace product() const;
};

struct SamplesDoc {
  std::vector<std::vector<GQ>> points;
};

struct HeckeDoc {
  std::string name;
  std::string spec;
  int radius = 3;
  int triples = 200;
  int pairs = 100;
  std::uint64_t seed = 1;
};

using Descriptor = std::variant<ActionDoc, CocycleDoc, AlgebraDoc, CertificateDoc, GluedModelDoc, SamplesDoc, HeckeDoc>;

/// ParseError on malformed JSON (with line) or a bad field (with its path);
/// ValidationError when a module invariant fails.
Descriptor parse(const std::string& text);
Descriptor parse_json(const json& j);
/// Reads a file, or a bundled fixture when no such file exists.
Descriptor load(const std::string& path_or_fixture);
std::string read_source(const std::string& path_or_fixture);

json to_json(const Descriptor& d);
std::string type_name(const Descriptor& d);

template <class T>
T expect(const Descriptor& d, const std::string& what) {
  if (const auto* p = std::get_if<T>(&d)) return *p;
  fail(ErrorCode::ParseError, what + ": document has type '" + type_name(d) + "'");
}

GQ gq_from_json(const json& j, const std::string& path);
json gq_to_json(const GQ& x);
std::vector<GQ> point_from_json(const json& j, const std::string& path);
json point_to_json(const std::vector<GQ>& p);

}  // namespace strata::io
