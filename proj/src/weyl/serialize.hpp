#pragma once

#include "json.hpp"
#include "weyl/weyl.hpp"

namespace strata::weyl {

enum class EltForm { Word, Translation };

/// {"omega": a, "word": [...]} or {"translation": [...], "perm": [...]} with 1-based perm images.
nlohmann::json element_to_json(const AffineWeyl& g, const Element& x, EltForm form);
/// Accepts either form.
Element element_from_json(const AffineWeyl& g, const nlohmann::json& j);

}  // namespace strata::weyl
