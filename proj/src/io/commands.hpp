#pragma once

#include <optional>
#include <string>
#include <vector>

#include "io/descriptors.hpp"

namespace strata::io {

/// Outcome of one command. `passed` is false only when a check failed;
/// input errors are thrown.
struct Report {
  std::string command;
  bool passed = true;
  json data;         // canonical, key-sorted
  std::string text;  // human-readable rendering of `data`
};

/// A point list: an existing file or bundled fixture (a JSON point, a list of
/// points, or a samples document), a JSON array literal, or "a,b,c".
std::vector<std::vector<GQ>> parse_points(const std::string& spec);

/// "name[:copy...]" or "x1,x2,...[:copy...]"; copies are 1-based, one per
/// factor, and default to 1.
struct GluedPointSpec {
  std::vector<GQ> x;
  std::vector<std::size_t> copies;  // 0-based
};
GluedPointSpec parse_glued_point(const GluedModelDoc& model, const std::string& spec);

/// Element in the weyl serialization: JSON text or a file holding it.
Report hecke_mul(const std::string& spec, int radius, const std::string& lhs, const std::string& rhs);
Report hecke_check(const HeckeDoc& doc);
Report exquo(const ActionDoc& action, const std::optional<CocycleDoc>& cocycle, std::optional<std::int64_t> oracle_m);
Report fiber(const AlgebraDoc& algebra, const std::vector<std::vector<GQ>>& points);
Report certify(const CertificateDoc& cert, const std::optional<std::vector<std::vector<GQ>>>& samples);
Report glue_multiplicity(const GluedModelDoc& model, const std::string& point);
Report glue_closure(const GluedModelDoc& model, const std::string& set, const std::string& point);
Report glue_compare(const GluedModelDoc& a, const GluedModelDoc& b);
Report selftest();

}  // namespace strata::io
