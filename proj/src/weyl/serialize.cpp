#include "weyl/serialize.hpp"

#include "exact/error.hpp"

namespace strata::weyl {

using nlohmann::json;

json element_to_json(const AffineWeyl& g, const Element& x, EltForm form) {
  json j = json::object();
  if (form == EltForm::Word) {
    ReducedWord rw = g.reduced_word(x);
    j["omega"] = rw.omega_power;
    j["word"] = rw.word;
  } else {
    j["translation"] = x.translation;
    json perm = json::array();
    for (int p : x.perm) perm.push_back(p + 1);
    j["perm"] = perm;
  }
  return j;
}

Element element_from_json(const AffineWeyl& g, const json& j) {
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "element must be a JSON object");
    if (j.contains("word")) {
      ReducedWord rw;
      rw.omega_power = j.value("omega", std::int64_t{0});
      rw.word = j.at("word").get<std::vector<int>>();
      for (int i : rw.word)
        if (i < 0 || i >= g.rank()) fail(ErrorCode::ValidationError, "generator index out of range");
      return g.from_word(rw);
    }
    if (j.contains("translation")) {
      IntVec t = j.at("translation").get<IntVec>();
      Perm p;
      if (j.contains("perm")) {
        for (int v : j.at("perm").get<std::vector<int>>()) p.push_back(v - 1);
      } else {
        p = perm_identity(g.rank());
      }
      if (static_cast<int>(t.size()) != g.rank()) fail(ErrorCode::SpecMismatch, "translation has wrong rank");
      return g.make(std::move(t), std::move(p));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("element: ") + e.what());
  }
  fail(ErrorCode::ParseError, "element needs either \"word\" or \"translation\"");
}

}  // namespace strata::weyl
