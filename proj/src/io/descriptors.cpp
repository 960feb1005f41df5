#include "io/descriptors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "io/fixtures.hpp"
#include "weyl/weyl.hpp"

namespace strata::io {

using exact::GQMatrix;
using exact::GQVec;
using exact::IntMatrix;
using findim::EntryKind;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  fail(ErrorCode::ParseError, (path.empty() ? "/" : path) + ": " + msg);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "/" + key, "missing field");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

std::string name_of(const json& j) {
  const json* n = optional_field(j, "name");
  return n ? as_str(*n, "/name") : "";
}

IntVec int_vec(const json& j, const std::string& path) {
  IntVec v;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) v.push_back(as_int(j[i], at(path, i)));
  return v;
}

json int_vec_json(const IntVec& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

GroupDoc group_from(const json& j, const std::string& path) {
  GroupDoc d;
  if (const json* t = optional_field(j, "table")) {
    const std::int64_t order = as_int(field(j, "order", path), path + "/order");
    for (std::size_t r = 0; r < as_array(*t, path + "/table").size(); ++r) {
      std::vector<int> row;
      for (auto x : int_vec((*t)[r], at(path + "/table", r))) row.push_back(static_cast<int>(x));
      d.table.push_back(std::move(row));
    }
    if (static_cast<std::int64_t>(d.table.size()) != order) bad(path + "/table", "table size differs from the order");
    if (const json* n = optional_field(j, "names"))
      for (std::size_t i = 0; i < as_array(*n, path + "/names").size(); ++i) d.names.push_back(as_str((*n)[i], at(path + "/names", i)));
    return d;
  }
  const json& gens = field(j, "generators", path);
  for (std::size_t i = 0; i < as_array(gens, path + "/generators").size(); ++i) {
    std::vector<int> g;
    for (auto x : int_vec(gens[i], at(path + "/generators", i))) {
      if (x < 1) bad(at(path + "/generators", i), "permutation images are 1-based");
      g.push_back(static_cast<int>(x - 1));
    }
    d.generators.push_back(std::move(g));
  }
  if (d.generators.empty()) bad(path + "/generators", "need at least one generator");
  return d;
}

json group_json(const GroupDoc& d) {
  if (!d.table.empty()) {
    json j{{"order", d.table.size()}, {"table", d.table}};
    if (!d.names.empty()) j["names"] = d.names;
    return j;
  }
  json a = json::array();
  for (const auto& g : d.generators) {
    json p = json::array();
    for (int x : g) p.push_back(x + 1);
    a.push_back(p);
  }
  return {{"generators", a}};
}

GQMatrix gq_matrix(const json& j, const std::string& path) {
  std::vector<GQVec> rows;
  for (std::size_t r = 0; r < as_array(j, path).size(); ++r) rows.push_back(point_from_json(j[r], at(path, r)));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != cols) bad(at(path, r), "ragged matrix");
  return GQMatrix::from_rows(rows, cols);
}

json gq_matrix_json(const GQMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(point_to_json(m.row(r)));
  return a;
}

IntMatrix int_matrix(const json& j, const std::string& path) {
  std::vector<IntVec> rows;
  for (std::size_t r = 0; r < as_array(j, path).size(); ++r) rows.push_back(int_vec(j[r], at(path, r)));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != cols) bad(at(path, r), "ragged matrix");
  return IntMatrix::from_rows(rows, cols);
}

json int_matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(int_vec_json(m.row(r)));
  return a;
}

// ---- actions and cocycles

ActionDoc action_from(const json& j, const std::string& path) {
  ActionDoc d;
  d.name = name_of(j);
  d.rank = static_cast<int>(as_int(field(j, "rank", path), path + "/rank"));
  d.group = group_from(field(j, "group", path), path + "/group");
  if (const json* k = optional_field(j, "kernel")) d.kernel = int_vec(*k, path + "/kernel");
  if (const json* m = optional_field(j, "generator_matrices")) {
    if (d.group.generators.empty()) bad(path + "/generator_matrices", "a group given by its table takes \"matrices\"");
    std::vector<IntMatrix> ms;
    for (std::size_t i = 0; i < as_array(*m, path + "/generator_matrices").size(); ++i)
      ms.push_back(int_matrix((*m)[i], at(path + "/generator_matrices", i)));
    if (ms.size() != d.group.generators.size()) bad(path + "/generator_matrices", "need one matrix per generator");
    d.generator_matrices = std::move(ms);
  }
  if (const json* m = optional_field(j, "matrices")) {
    if (!m->is_object()) bad(path + "/matrices", "expected an object keyed by element names");
    for (const auto& [k, v] : m->items()) d.matrices.emplace(k, int_matrix(v, path + "/matrices/" + k));
  }
  if (const json* t = optional_field(j, "theta")) {
    ThetaDoc th;
    th.v = gq_from_json(field(*t, "v", path + "/theta"), path + "/theta/v");
    th.shift = as_str(field(*t, "shift", path + "/theta"), path + "/theta/shift");
    if (th.shift != "zero" && th.shift != "gl2-iwahori") bad(path + "/theta/shift", "expected zero or gl2-iwahori");
    d.theta = th;
  }
  auto group = std::make_shared<const groups::FiniteGroup>(d.group.build());
  const auto n = static_cast<std::size_t>(d.rank);
  auto require_unimodular = [&](const IntMatrix& m, const std::string& what) {
    if (m.rows() != n || m.cols() != n) fail(ErrorCode::ValidationError, "matrix for " + what + " has the wrong shape");
    auto det = m.determinant();
    if (det != 1 && det != -1)
      fail(ErrorCode::ValidationError, "matrix for " + what + " is not unimodular (determinant " + std::to_string(det) + ")");
  };
  if (!d.group.table.empty()) {
    if (d.matrices.empty()) bad(path + "/matrices", "a group given by its table needs one matrix per element");
    std::vector<IntMatrix> all;
    for (const auto& name : group->names()) {
      auto it = d.matrices.find(name);
      if (it == d.matrices.end()) fail(ErrorCode::ValidationError, "no matrix for element " + name);
      require_unimodular(it->second, name);
      all.push_back(it->second);
    }
    if (d.matrices.size() != group->order()) fail(ErrorCode::ValidationError, "matrices name elements outside the group");
    d.action = std::make_shared<const lattice::LatticeAction>(d.rank, d.kernel, group, std::move(all));
    return d;
  }
  if (!d.matrices.empty()) bad(path + "/matrices", "a group given by generators takes \"generator_matrices\"");
  if (!d.generator_matrices) {
    if (static_cast<int>(d.group.generators[0].size()) != d.rank)
      fail(ErrorCode::ValidationError, "permutation degree differs from the lattice rank");
    d.action = std::make_shared<const lattice::LatticeAction>(lattice::LatticeAction::permutation(group, d.kernel));
    return d;
  }
  // extend generator matrices along the Cayley graph
  for (std::size_t k = 0; k < d.generator_matrices->size(); ++k) require_unimodular((*d.generator_matrices)[k], "generator " + std::to_string(k + 1));
  std::vector<int> gen_index;
  for (const auto& g : d.group.generators) {
    auto it = std::find(group->permutations().begin(), group->permutations().end(), g);
    gen_index.push_back(static_cast<int>(it - group->permutations().begin()));
  }
  std::vector<std::optional<IntMatrix>> mats(group->order());
  mats[static_cast<std::size_t>(group->identity())] = IntMatrix::identity(n);
  std::vector<int> queue{group->identity()};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t k = 0; k < gen_index.size(); ++k) {
      int y = group->mul(queue[q], gen_index[k]);
      auto& slot = mats[static_cast<std::size_t>(y)];
      if (!slot) {
        slot = *mats[static_cast<std::size_t>(queue[q])] * (*d.generator_matrices)[k];
        queue.push_back(y);
      }
    }
  std::vector<IntMatrix> all;
  for (auto& m : mats) all.push_back(*m);
  d.action = std::make_shared<const lattice::LatticeAction>(d.rank, d.kernel, group, std::move(all));
  return d;
}

json action_json(const ActionDoc& d) {
  json j{{"type", "action"}, {"rank", d.rank}, {"group", group_json(d.group)}};
  if (!d.name.empty()) j["name"] = d.name;
  if (d.kernel) j["kernel"] = int_vec_json(*d.kernel);
  if (d.generator_matrices) {
    json a = json::array();
    for (const auto& m : *d.generator_matrices) a.push_back(int_matrix_json(m));
    j["generator_matrices"] = a;
  }
  if (!d.matrices.empty()) {
    json m = json::object();
    for (const auto& [k, v] : d.matrices) m[k] = int_matrix_json(v);
    j["matrices"] = m;
  }
  if (d.theta) j["theta"] = {{"v", gq_to_json(d.theta->v)}, {"shift", d.theta->shift}};
  return j;
}

CocycleDoc cocycle_from(const json& j, const std::string& path) {
  CocycleDoc d;
  d.name = name_of(j);
  d.group = group_from(field(j, "group", path), path + "/group");
  if (const json* p = optional_field(j, "projective")) {
    if (!p->is_object()) bad(path + "/projective", "expected an object keyed by element names");
    for (const auto& [k, v] : p->items()) d.projective.emplace(k, gq_matrix(v, path + "/projective/" + k));
  }
  if (const json* v = optional_field(j, "values")) {
    for (std::size_t i = 0; i < as_array(*v, path + "/values").size(); ++i) {
      const json& e = (*v)[i];
      const std::string p = at(path + "/values", i);
      d.values[{as_str(field(e, "g", p), p + "/g"), as_str(field(e, "h", p), p + "/h")}] = gq_from_json(field(e, "value", p), p + "/value");
    }
  }
  if (d.projective.empty() == d.values.empty() && !d.projective.empty())
    bad(path, "give either projective matrices or cocycle values, not both");
  auto g = d.group.build();
  auto c = d.on(g);
  std::string w;
  if (!groups::verify_cocycle(g, c, &w)) fail(ErrorCode::InvalidCocycle, w);
  return d;
}

json cocycle_json(const CocycleDoc& d) {
  json j{{"type", "cocycle"}, {"group", group_json(d.group)}};
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.projective.empty()) {
    json p = json::object();
    for (const auto& [k, m] : d.projective) p[k] = gq_matrix_json(m);
    j["projective"] = p;
  }
  if (!d.values.empty()) {
    json a = json::array();
    for (const auto& [k, v] : d.values) a.push_back({{"g", k.first}, {"h", k.second}, {"value", gq_to_json(v)}});
    j["values"] = a;
  }
  return j;
}

// ---- algebras

findim::LinearSubvariety linear_from(const json& j, const std::string& path) {
  findim::LinearSubvariety l;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    l.normals.push_back(point_from_json(field(j[i], "coefficients", p), p + "/coefficients"));
    l.values.push_back(gq_from_json(field(j[i], "value", p), p + "/value"));
  }
  return l;
}

json linear_json(const findim::LinearSubvariety& l) {
  json a = json::array();
  for (std::size_t k = 0; k < l.normals.size(); ++k)
    a.push_back({{"coefficients", point_to_json(l.normals[k])}, {"value", gq_to_json(l.values[k])}});
  return a;
}

std::vector<findim::PatternBlock> blocks_from(const json& j, const std::string& path) {
  std::vector<findim::PatternBlock> out;
  for (std::size_t b = 0; b < as_array(j, path).size(); ++b) {
    const std::string pb = at(path, b);
    const json& rows = as_array(j[b], pb);
    findim::PatternBlock blk;
    blk.n = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array() || rows[r].size() != blk.n) bad(at(pb, r), "pattern blocks must be square");
      for (std::size_t s = 0; s < blk.n; ++s) {
        try {
          blk.entries.push_back(findim::parse_entry_kind(as_str(rows[r][s], at(at(pb, r), s))));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::ParseError) throw;
          bad(at(at(pb, r), s), e.what());
        }
      }
    }
    out.push_back(std::move(blk));
  }
  return out;
}

json blocks_json(const std::vector<findim::PatternBlock>& blocks) {
  json a = json::array();
  for (const auto& b : blocks) {
    json rows = json::array();
    for (std::size_t r = 0; r < b.n; ++r) {
      json row = json::array();
      for (std::size_t s = 0; s < b.n; ++s) row.push_back(findim::entry_kind_name(b.at(r, s)));
      rows.push_back(row);
    }
    a.push_back(rows);
  }
  return a;
}

findim::IdealPattern ideal_from(const json& j, const std::string& path) {
  findim::IdealPattern ideal;
  for (const auto& b : blocks_from(j, path)) ideal.entries.insert(ideal.entries.end(), b.entries.begin(), b.entries.end());
  return ideal;
}

json ideal_json(const findim::PatternAlgebra& shape, const findim::IdealPattern& ideal) {
  std::vector<findim::PatternBlock> blocks;
  std::size_t off = 0;
  for (const auto& b : shape.blocks) {
    findim::PatternBlock blk{b.n, {}};
    blk.entries.assign(ideal.entries.begin() + static_cast<std::ptrdiff_t>(off),
                       ideal.entries.begin() + static_cast<std::ptrdiff_t>(off + b.n * b.n));
    off += b.n * b.n;
    blocks.push_back(std::move(blk));
  }
  return blocks_json(blocks);
}

findim::BaseVariety variety_from(const json& j, const std::string& path) {
  findim::BaseVariety b;
  const std::string k = as_str(field(j, "kind", path), path + "/kind");
  if (k == "affine")
    b.kind = findim::BaseVariety::Kind::Affine;
  else if (k == "torus")
    b.kind = findim::BaseVariety::Kind::Torus;
  else
    bad(path + "/kind", "expected affine or torus");
  b.dim = static_cast<int>(as_int(field(j, "dim", path), path + "/dim"));
  return b;
}

AlgebraDoc algebra_from(const json& j, const std::string& path) {
  AlgebraDoc d;
  d.name = name_of(j);
  const std::string kind = as_str(field(j, "kind", path), path + "/kind");
  if (kind == "crossed_product" || kind == "twisted_crossed_product") {
    d.action = action_from(field(j, "action", path), path + "/action");
    findim::CrossedProduct cp;
    cp.action = d.action->action;
    const json* coeff = optional_field(j, "coefficient");
    cp.coefficient = findim::Coefficient::by_name(coeff ? as_str(*coeff, path + "/coefficient") : "scalar");
    if (const json* c = optional_field(j, "cocycle")) {
      d.cocycle = cocycle_from(*c, path + "/cocycle");
      cp.cocycle = d.cocycle->on(cp.action->group());
    }
    if ((kind == "twisted_crossed_product") != cp.cocycle.has_value())
      bad(path + "/cocycle", kind == "crossed_product" ? "an untwisted crossed product takes no cocycle" : "a twisted crossed product needs a cocycle");
    d.desc.body = std::move(cp);
  } else if (kind == "matrix_ideal_pattern") {
    findim::PatternAlgebra pa;
    pa.base = variety_from(field(j, "base", path), path + "/base");
    if (const json* y = optional_field(j, "Y")) pa.y = linear_from(*y, path + "/Y");
    pa.blocks = blocks_from(field(j, "blocks", path), path + "/blocks");
    d.desc.body = std::move(pa);
  } else if (kind == "structure_constants") {
    const auto dim = static_cast<std::size_t>(as_int(field(j, "dim", path), path + "/dim"));
    findim::FinDimAlgebra a(dim);
    const json& prods = as_array(field(j, "products", path), path + "/products");
    std::map<std::pair<std::size_t, std::size_t>, findim::FinDimAlgebra::Sparse> table;
    for (std::size_t i = 0; i < prods.size(); ++i) {
      const std::string p = at(path + "/products", i);
      if (!prods[i].is_array() || prods[i].size() != 4) bad(p, "expected [i, j, k, coefficient]");
      auto x = static_cast<std::size_t>(as_int(prods[i][0], p + "/0"));
      auto y = static_cast<std::size_t>(as_int(prods[i][1], p + "/1"));
      auto z = static_cast<std::size_t>(as_int(prods[i][2], p + "/2"));
      if (x >= dim || y >= dim || z >= dim) bad(p, "basis index out of range");
      table[{x, y}].emplace_back(z, gq_from_json(prods[i][3], p + "/3"));
    }
    for (auto& [k, v] : table) a.set_product(k.first, k.second, std::move(v));
    if (const json* u = optional_field(j, "unit")) a.set_unit(point_from_json(*u, path + "/unit"));
    if (const json* m = optional_field(j, "marked")) {
      std::vector<GQVec> marked;
      for (std::size_t i = 0; i < as_array(*m, path + "/marked").size(); ++i) marked.push_back(point_from_json((*m)[i], at(path + "/marked", i)));
      a.set_marked_central(std::move(marked));
    }
    if (const json* l = optional_field(j, "labels")) {
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < as_array(*l, path + "/labels").size(); ++i) labels.push_back(as_str((*l)[i], at(path + "/labels", i)));
      a.set_labels(std::move(labels));
    }
    if (a.unit() && a.unit()->size() != dim) bad(path + "/unit", "wrong length");
    for (const auto& m : a.marked_central())
      if (m.size() != dim) bad(path + "/marked", "wrong length");
    d.desc.body = findim::ConstantAlgebra{std::move(a)};
  } else {
    bad(path + "/kind", "unknown algebra kind '" + kind + "'");
  }
  d.desc.validate();
  return d;
}

json algebra_json(const AlgebraDoc& d, bool with_type) {
  json j{{"kind", d.desc.kind()}};
  if (with_type) j["type"] = "algebra";
  if (!d.name.empty()) j["name"] = d.name;
  if (const auto* cp = std::get_if<findim::CrossedProduct>(&d.desc.body)) {
    json a = action_json(*d.action);
    a.erase("type");
    j["action"] = a;
    j["coefficient"] = cp->coefficient.name;
    if (d.cocycle) {
      json c = cocycle_json(*d.cocycle);
      c.erase("type");
      j["cocycle"] = c;
    }
  } else if (const auto* pa = std::get_if<findim::PatternAlgebra>(&d.desc.body)) {
    j["base"] = {{"kind", pa->base.kind == findim::BaseVariety::Kind::Affine ? "affine" : "torus"}, {"dim", pa->base.dim}};
    if (!pa->y.normals.empty()) j["Y"] = linear_json(pa->y);
    j["blocks"] = blocks_json(pa->blocks);
  } else {
    const auto& a = std::get<findim::ConstantAlgebra>(d.desc.body).algebra;
    j["dim"] = a.dim();
    json prods = json::array();
    for (std::size_t x = 0; x < a.dim(); ++x)
      for (std::size_t y = 0; y < a.dim(); ++y)
        for (const auto& [z, c] : a.product(x, y)) prods.push_back({x, y, z, gq_to_json(c)});
    j["products"] = prods;
    if (a.unit()) j["unit"] = point_to_json(*a.unit());
    if (!a.marked_central().empty()) {
      json m = json::array();
      for (const auto& v : a.marked_central()) m.push_back(point_to_json(v));
      j["marked"] = m;
    }
    if (!a.labels().empty()) j["labels"] = a.labels();
  }
  return j;
}

// ---- certificates

findim::PatternElement element_from(const json& j, const std::string& path, int rank) {
  findim::PatternElement x;
  const exact::LatticeSpec lat{rank, std::nullopt};
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    auto e = static_cast<std::size_t>(as_int(field(j[i], "entry", p), p + "/entry"));
    exact::TorusLaurent f(lat);
    const json& terms = as_array(field(j[i], "terms", p), p + "/terms");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string pt = at(p + "/terms", t);
      IntVec ex = int_vec(field(terms[t], "exponent", pt), pt + "/exponent");
      if (static_cast<int>(ex.size()) != rank) bad(pt + "/exponent", "wrong number of variables");
      f.add_term(ex, gq_from_json(field(terms[t], "coefficient", pt), pt + "/coefficient"));
    }
    auto [it, fresh] = x.emplace(e, f);
    if (!fresh) it->second += f;
  }
  return x;
}

json element_json(const findim::PatternElement& x) {
  json a = json::array();
  for (const auto& [e, f] : x) {
    json terms = json::array();
    for (const auto& [ex, c] : f.terms()) terms.push_back({{"exponent", int_vec_json(ex)}, {"coefficient", gq_to_json(c)}});
    a.push_back({{"entry", e}, {"terms", terms}});
  }
  return a;
}

const findim::PatternAlgebra& pattern_named(const std::map<std::string, AlgebraDoc>& algs, const std::string& name,
                                            const std::string& path) {
  auto it = algs.find(name);
  if (it == algs.end()) bad(path, "unknown algebra '" + name + "'");
  const auto* p = std::get_if<findim::PatternAlgebra>(&it->second.desc.body);
  if (!p) bad(path, "algebra '" + name + "' is not a matrix ideal pattern");
  return *p;
}

CertificateDoc certificate_from(const json& j, const std::string& path) {
  CertificateDoc d;
  d.name = name_of(j);
  const json& algs = field(j, "algebras", path);
  if (!algs.is_object()) bad(path + "/algebras", "expected an object keyed by algebra names");
  for (const auto& [k, v] : algs.items()) {
    d.algebras.emplace(k, algebra_from(v, path + "/algebras/" + k));
    d.cert.algebras.emplace(k, d.algebras.at(k).desc);
  }
  d.cert.start = as_str(field(j, "start", path), path + "/start");
  d.cert.end = as_str(field(j, "end", path), path + "/end");
  const json& steps = as_array(field(j, "steps", path), path + "/steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string p = at(path + "/steps", i);
    const std::string kind = as_str(field(steps[i], "kind", p), p + "/kind");
    if (kind == "morphism") {
      findim::MorphismStep st;
      st.left = as_str(field(steps[i], "left", p), p + "/left");
      st.right = as_str(field(steps[i], "right", p), p + "/right");
      const std::string dir = as_str(field(steps[i], "direction", p), p + "/direction");
      if (dir != "forward" && dir != "backward") bad(p + "/direction", "expected forward or backward");
      st.forward = dir == "forward";
      if (const json* m = optional_field(steps[i], "map")) {
        findim::PatternMap pm;
        for (std::size_t e = 0; e < as_array(*m, p + "/map").size(); ++e) {
          std::vector<std::pair<std::size_t, GQ>> img;
          const std::string pe = at(p + "/map", e);
          for (std::size_t t = 0; t < as_array((*m)[e], pe).size(); ++t) {
            const json& term = (*m)[e][t];
            if (!term.is_array() || term.size() != 2) bad(at(pe, t), "expected [target entry, coefficient]");
            img.emplace_back(static_cast<std::size_t>(as_int(term[0], at(pe, t) + "/0")), gq_from_json(term[1], at(pe, t) + "/1"));
          }
          pm.images.push_back(std::move(img));
        }
        st.map = std::move(pm);
      }
      auto filt = [&](const char* key) -> std::optional<std::vector<findim::IdealPattern>> {
        const json* f = optional_field(steps[i], key);
        if (!f) return std::nullopt;
        std::vector<findim::IdealPattern> chain;
        for (std::size_t k = 0; k < as_array(*f, p + "/" + key).size(); ++k) chain.push_back(ideal_from((*f)[k], at(p + "/" + key, k)));
        return chain;
      };
      st.filtration_source = filt("filtration_source");
      st.filtration_target = filt("filtration_target");
      if (st.filtration_source)
        for (const auto& ideal : *st.filtration_source)
          findim::validate_ideal(pattern_named(d.algebras, st.source(), p + "/filtration_source"), ideal);
      if (st.filtration_target)
        for (const auto& ideal : *st.filtration_target)
          findim::validate_ideal(pattern_named(d.algebras, st.target(), p + "/filtration_target"), ideal);
      d.cert.steps.emplace_back(std::move(st));
    } else if (kind == "variation") {
      findim::VariationStep st;
      st.algebra = as_str(field(steps[i], "algebra", p), p + "/algebra");
      const int rank = pattern_named(d.algebras, st.algebra, p + "/algebra").base.dim;
      st.zeta = gq_from_json(field(steps[i], "zeta", p), p + "/zeta");
      st.eta = gq_from_json(field(steps[i], "eta", p), p + "/eta");
      const json& psi = as_array(field(steps[i], "psi", p), p + "/psi");
      for (std::size_t g = 0; g < psi.size(); ++g) {
        findim::PatternLaurent lx;
        const std::string pg = at(p + "/psi", g);
        for (std::size_t t = 0; t < as_array(psi[g], pg).size(); ++t) {
          const std::string pt = at(pg, t);
          auto k = as_int(field(psi[g][t], "t", pt), pt + "/t");
          lx[k] = element_from(field(psi[g][t], "element", pt), pt + "/element", rank);
        }
        st.psi.push_back(std::move(lx));
      }
      for (const char* key : {"action_zeta", "action_eta"}) {
        auto& dst = std::string(key) == "action_zeta" ? st.action_zeta : st.action_eta;
        const json& a = as_array(field(steps[i], key, p), p + "/" + key);
        for (std::size_t g = 0; g < a.size(); ++g) dst.push_back(element_from(a[g], at(p + "/" + key, g), rank));
      }
      d.cert.steps.emplace_back(std::move(st));
    } else {
      bad(p + "/kind", "expected morphism or variation");
    }
  }
  if (const json* s = optional_field(j, "samples"))
    for (std::size_t i = 0; i < as_array(*s, path + "/samples").size(); ++i) d.samples.push_back(point_from_json((*s)[i], at(path + "/samples", i)));
  return d;
}

json certificate_json(const CertificateDoc& d) {
  json j{{"type", "certificate"}, {"start", d.cert.start}, {"end", d.cert.end}};
  if (!d.name.empty()) j["name"] = d.name;
  json algs = json::object();
  for (const auto& [k, a] : d.algebras) algs[k] = algebra_json(a, false);
  j["algebras"] = algs;
  json steps = json::array();
  for (const auto& s : d.cert.steps) {
    if (const auto* m = std::get_if<findim::MorphismStep>(&s)) {
      json st{{"kind", "morphism"}, {"left", m->left}, {"right", m->right}, {"direction", m->forward ? "forward" : "backward"}};
      if (m->map) {
        json map = json::array();
        for (const auto& img : m->map->images) {
          json terms = json::array();
          for (const auto& [t, c] : img) terms.push_back({t, gq_to_json(c)});
          map.push_back(terms);
        }
        st["map"] = map;
      }
      auto chain_json = [&](const std::vector<findim::IdealPattern>& chain, const std::string& alg) {
        json a = json::array();
        for (const auto& ideal : chain) a.push_back(ideal_json(pattern_named(d.algebras, alg, "/"), ideal));
        return a;
      };
      if (m->filtration_source) st["filtration_source"] = chain_json(*m->filtration_source, m->source());
      if (m->filtration_target) st["filtration_target"] = chain_json(*m->filtration_target, m->target());
      steps.push_back(st);
    } else {
      const auto& v = std::get<findim::VariationStep>(s);
      json psi = json::array();
      for (const auto& lx : v.psi) {
        json terms = json::array();
        for (const auto& [k, el] : lx) terms.push_back({{"t", k}, {"element", element_json(el)}});
        psi.push_back(terms);
      }
      json az = json::array(), ae = json::array();
      for (const auto& x : v.action_zeta) az.push_back(element_json(x));
      for (const auto& x : v.action_eta) ae.push_back(element_json(x));
      steps.push_back({{"kind", "variation"}, {"algebra", v.algebra}, {"zeta", gq_to_json(v.zeta)}, {"eta", gq_to_json(v.eta)},
                       {"psi", psi}, {"action_zeta", az}, {"action_eta", ae}});
    }
  }
  j["steps"] = steps;
  if (!d.samples.empty()) {
    json s = json::array();
    for (const auto& p : d.samples) s.push_back(point_to_json(p));
    j["samples"] = s;
  }
  return j;
}

// ---- glued models

glue::Locus locus_from(const json& j, const std::string& path) {
  glue::Locus l;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) {
    const std::string p = at(path, i);
    const json& piece = j[i];
    if (!piece.is_object() || piece.size() != 1) bad(p, "expected one of linear, coset, points");
    if (const json* lin = optional_field(piece, "linear")) {
      l.pieces.emplace_back(linear_from(*lin, p + "/linear"));
    } else if (const json* cos = optional_field(piece, "coset")) {
      std::vector<IntVec> cols;
      std::vector<GQ> vals;
      for (std::size_t k = 0; k < as_array(*cos, p + "/coset").size(); ++k) {
        const std::string pk = at(p + "/coset", k);
        cols.push_back(int_vec(field((*cos)[k], "character", pk), pk + "/character"));
        vals.push_back(gq_from_json(field((*cos)[k], "value", pk), pk + "/value"));
      }
      const std::size_t n = cols.empty() ? 0 : cols[0].size();
      for (const auto& c : cols)
        if (c.size() != n) bad(p + "/coset", "characters of different lengths");
      l.pieces.emplace_back(glue::Coset{IntMatrix::from_columns(cols, n), vals});
    } else if (const json* pts = optional_field(piece, "points")) {
      glue::PointSet ps;
      for (std::size_t k = 0; k < as_array(*pts, p + "/points").size(); ++k) ps.points.push_back(point_from_json((*pts)[k], at(p + "/points", k)));
      l.pieces.emplace_back(std::move(ps));
    } else {
      bad(p, "expected one of linear, coset, points");
    }
  }
  return l;
}

json locus_json(const glue::Locus& l) {
  json a = json::array();
  for (const auto& p : l.pieces) {
    if (const auto* c = std::get_if<glue::Coset>(&p)) {
      json rows = json::array();
      for (std::size_t k = 0; k < c->relations.cols(); ++k)
        rows.push_back({{"character", int_vec_json(c->relations.col(k))}, {"value", gq_to_json(c->values[k])}});
      a.push_back({{"coset", rows}});
    } else if (const auto* lin = std::get_if<findim::LinearSubvariety>(&p)) {
      a.push_back({{"linear", linear_json(*lin)}});
    } else {
      json pts = json::array();
      for (const auto& q : std::get<glue::PointSet>(p).points) pts.push_back(point_to_json(q));
      a.push_back({{"points", pts}});
    }
  }
  return a;
}

glue::GluedSpace space_from(const json& j, const std::string& path) {
  const json& b = field(j, "base", path);
  const std::string pb = path + "/base";
  glue::Base base;
  const std::string kind = as_str(field(b, "kind", pb), pb + "/kind");
  if (kind == "affine")
    base.kind = glue::Base::Kind::Affine;
  else if (kind == "torus")
    base.kind = glue::Base::Kind::Torus;
  else
    bad(pb + "/kind", "expected affine or torus");
  base.dim = static_cast<int>(as_int(field(b, "dim", pb), pb + "/dim"));
  if (const json* k = optional_field(b, "kernels"))
    for (std::size_t i = 0; i < as_array(*k, pb + "/kernels").size(); ++i) base.kernels.push_back(int_vec((*k)[i], at(pb + "/kernels", i)));
  if (const json* s = optional_field(b, "support")) base.support = locus_from(*s, pb + "/support");
  if (const json* n = optional_field(b, "note")) base.note = as_str(*n, pb + "/note");
  std::vector<glue::Doubling> ds;
  if (const json* dl = optional_field(j, "doubling"))
    for (std::size_t i = 0; i < as_array(*dl, path + "/doubling").size(); ++i) {
      const std::string p = at(path + "/doubling", i);
      glue::Doubling d;
      d.locus = locus_from(field((*dl)[i], "locus", p), p + "/locus");
      if (const json* m = optional_field((*dl)[i], "minus")) d.minus = locus_from(*m, p + "/minus");
      const json* e = optional_field((*dl)[i], "extra");
      const std::int64_t extra = e ? as_int(*e, p + "/extra") : 1;
      if (extra < 1) bad(p + "/extra", "must be at least 1");
      d.extra = static_cast<std::size_t>(extra);
      ds.push_back(std::move(d));
    }
  return glue::build_glued(std::move(base), std::move(ds));
}

json space_json(const glue::GluedSpace& s) {
  json b{{"kind", s.base.kind == glue::Base::Kind::Affine ? "affine" : "torus"}, {"dim", s.base.dim}};
  if (!s.base.kernels.empty()) {
    json k = json::array();
    for (const auto& v : s.base.kernels) k.push_back(int_vec_json(v));
    b["kernels"] = k;
  }
  if (s.base.support) b["support"] = locus_json(*s.base.support);
  if (!s.base.note.empty()) b["note"] = s.base.note;
  json j{{"base", b}};
  if (!s.doubling.empty()) {
    json a = json::array();
    for (const auto& d : s.doubling) {
      json e{{"locus", locus_json(d.locus)}, {"extra", d.extra}};
      if (!d.minus.empty()) e["minus"] = locus_json(d.minus);
      a.push_back(e);
    }
    j["doubling"] = a;
  }
  return j;
}

GluedModelDoc model_from(const json& j, const std::string& path) {
  GluedModelDoc d;
  d.name = name_of(j);
  auto spaces = [&](const char* key) {
    const json& a = as_array(field(j, key, path), path + "/" + key);
    if (a.empty()) bad(path + "/" + key, "empty list");
    for (std::size_t i = 0; i < a.size(); ++i) d.spaces.push_back(space_from(a[i], at(path + "/" + key, i)));
  };
  if (optional_field(j, "parts")) {
    d.shape = GluedModelDoc::Shape::Union;
    spaces("parts");
  } else if (optional_field(j, "factors")) {
    d.shape = GluedModelDoc::Shape::Product;
    spaces("factors");
  } else {
    d.spaces.push_back(space_from(j, path));
  }
  const std::size_t nf = d.shape == GluedModelDoc::Shape::Product ? d.spaces.size() : 1;
  if (const json* sets = optional_field(j, "sets")) {
    if (!sets->is_object()) bad(path + "/sets", "expected an object keyed by set names");
    for (const auto& [k, v] : sets->items()) {
      const std::string p = path + "/sets/" + k;
      SetDoc s;
      const json& charts = as_array(field(v, "charts", p), p + "/charts");
      for (std::size_t c = 0; c < charts.size(); ++c) {
        std::vector<std::size_t> chart;
        IntVec raw = charts[c].is_array() ? int_vec(charts[c], at(p + "/charts", c)) : IntVec{as_int(charts[c], at(p + "/charts", c))};
        for (auto x : raw) {
          if (x < 1) bad(at(p + "/charts", c), "copies are numbered from 1");
          chart.push_back(static_cast<std::size_t>(x - 1));
        }
        if (chart.size() != nf) bad(at(p + "/charts", c), "need one copy per factor");
        s.charts.push_back(std::move(chart));
      }
      s.locus = locus_from(field(v, "locus", p), p + "/locus");
      if (const json* m = optional_field(v, "minus")) s.minus = locus_from(*m, p + "/minus");
      d.sets.emplace(k, std::move(s));
    }
  }
  if (const json* pts = optional_field(j, "points")) {
    if (!pts->is_object()) bad(path + "/points", "expected an object keyed by point names");
    for (const auto& [k, v] : pts->items()) d.points.emplace(k, point_from_json(v, path + "/points/" + k));
  }
  return d;
}

json model_json(const GluedModelDoc& d) {
  json j;
  if (d.shape == GluedModelDoc::Shape::Single) {
    j = space_json(d.spaces[0]);
  } else {
    json a = json::array();
    for (const auto& s : d.spaces) a.push_back(space_json(s));
    j[d.shape == GluedModelDoc::Shape::Union ? "parts" : "factors"] = a;
  }
  j["type"] = "glued_model";
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.sets.empty()) {
    json sets = json::object();
    for (const auto& [k, s] : d.sets) {
      json charts = json::array();
      for (const auto& c : s.charts) {
        if (d.shape == GluedModelDoc::Shape::Product) {
          json v = json::array();
          for (auto x : c) v.push_back(x + 1);
          charts.push_back(v);
        } else {
          charts.push_back(c[0] + 1);
        }
      }
      json e{{"charts", charts}, {"locus", locus_json(s.locus)}};
      if (!s.minus.empty()) e["minus"] = locus_json(s.minus);
      sets[k] = e;
    }
    j["sets"] = sets;
  }
  if (!d.points.empty()) {
    json p = json::object();
    for (const auto& [k, v] : d.points) p[k] = point_to_json(v);
    j["points"] = p;
  }
  return j;
}

}  // namespace

groups::FiniteGroup GroupDoc::build() const {
  if (!table.empty()) return groups::FiniteGroup(table, names);
  return groups::FiniteGroup::from_permutations(generators);
}

exquo::ThetaShift ThetaDoc::build(const exquo::ExtendedQuotient& eq) const {
  if (shift == "gl2-iwahori") return exquo::ThetaShift::gl2_iwahori(eq, v);
  return exquo::ThetaShift::zero(eq, v);
}

groups::Cocycle2 CocycleDoc::on(const groups::FiniteGroup& g) const {
  if (!projective.empty()) {
    std::vector<GQMatrix> rho;
    for (const auto& name : g.names()) {
      auto it = projective.find(name);
      if (it == projective.end()) fail(ErrorCode::ValidationError, "projective representation has no matrix for element " + name);
      rho.push_back(it->second);
    }
    if (projective.size() != g.order()) fail(ErrorCode::ValidationError, "projective representation names elements outside the group");
    return groups::cocycle_from_projective(g, rho);
  }
  auto c = groups::Cocycle2::trivial(g);
  for (const auto& [k, v] : values) {
    int a = g.find(k.first), b = g.find(k.second);
    if (a < 0 || b < 0) fail(ErrorCode::ValidationError, "cocycle value names an unknown element");
    c.values[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = v;
  }
  return c;
}

glue::SpaceModel GluedModelDoc::model() const {
  if (shape == Shape::Product) fail(ErrorCode::UnsupportedDescriptor, "a product model is not a disjoint union");
  return {name, spaces};
}

glue::ProductSpace GluedModelDoc::product() const { return {spaces}; }

GQ gq_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return GQ(j.get<std::int64_t>());
  if (!j.is_string()) bad(path, "expected a Gaussian rational string such as \"1/2+3*i\"");
  try {
    return GQ::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

json gq_to_json(const GQ& x) { return x.str(); }

std::vector<GQ> point_from_json(const json& j, const std::string& path) {
  std::vector<GQ> p;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) p.push_back(gq_from_json(j[i], at(path, i)));
  return p;
}

json point_to_json(const std::vector<GQ>& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(gq_to_json(x));
  return a;
}

Descriptor parse_json(const json& j) {
  const std::string type = as_str(field(j, "type", ""), "/type");
  if (type == "action") return action_from(j, "");
  if (type == "cocycle") return cocycle_from(j, "");
  if (type == "algebra") return algebra_from(j, "");
  if (type == "certificate") return certificate_from(j, "");
  if (type == "glued_model") return model_from(j, "");
  if (type == "samples") {
    SamplesDoc s;
    const json& pts = as_array(field(j, "points", ""), "/points");
    for (std::size_t i = 0; i < pts.size(); ++i) s.points.push_back(point_from_json(pts[i], at("/points", i)));
    return s;
  }
  if (type == "hecke") {
    HeckeDoc h;
    h.name = name_of(j);
    h.spec = as_str(field(j, "spec", ""), "/spec");
    if (const json* r = optional_field(j, "radius")) h.radius = static_cast<int>(as_int(*r, "/radius"));
    if (const json* t = optional_field(j, "triples")) h.triples = static_cast<int>(as_int(*t, "/triples"));
    if (const json* p = optional_field(j, "pairs")) h.pairs = static_cast<int>(as_int(*p, "/pairs"));
    if (const json* s = optional_field(j, "seed")) h.seed = static_cast<std::uint64_t>(as_int(*s, "/seed"));
    weyl::RootSystemSpec::parse(h.spec);
    return h;
  }
  bad("/type", "unknown document type '" + type + "'");
}

Descriptor parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return parse_json(j);
}

std::string read_source(const std::string& path_or_fixture) {
  if (std::filesystem::exists(path_or_fixture)) {
    std::ifstream in(path_or_fixture);
    if (!in) fail(ErrorCode::ParseError, "cannot read " + path_or_fixture);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const auto& fx = bundled_fixtures();
  std::string key = std::filesystem::path(path_or_fixture).filename().string();
  auto it = fx.find(key);
  if (it == fx.end()) it = fx.find(key + ".json");
  if (it == fx.end()) fail(ErrorCode::ParseError, "no such file or bundled fixture: " + path_or_fixture);
  return it->second;
}

Descriptor load(const std::string& path_or_fixture) { return parse(read_source(path_or_fixture)); }

json to_json(const Descriptor& d) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ActionDoc>) {
          return action_json(x);
        } else if constexpr (std::is_same_v<T, CocycleDoc>) {
          return cocycle_json(x);
        } else if constexpr (std::is_same_v<T, AlgebraDoc>) {
          return algebra_json(x, true);
        } else if constexpr (std::is_same_v<T, CertificateDoc>) {
          return certificate_json(x);
        } else if constexpr (std::is_same_v<T, GluedModelDoc>) {
          return model_json(x);
        } else if constexpr (std::is_same_v<T, SamplesDoc>) {
          json a = json::array();
          for (const auto& p : x.points) a.push_back(point_to_json(p));
          return {{"type", "samples"}, {"points", a}};
        } else {
          json j{{"type", "hecke"}, {"spec", x.spec}, {"radius", x.radius}, {"triples", x.triples}, {"pairs", x.pairs}, {"seed", x.seed}};
          if (!x.name.empty()) j["name"] = x.name;
          return j;
        }
      },
      d);
}

std::string type_name(const Descriptor& d) {
  static const char* names[] = {"action", "cocycle", "algebra", "certificate", "glued_model", "samples", "hecke"};
  return names[d.index()];
}

}  // namespace strata::io
