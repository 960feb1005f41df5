#include "io/commands.hpp"

#include <filesystem>
#include <sstream>

#include "acceptance/acceptance.hpp"
#include "exquo/exquo.hpp"
#include "findim/analysis.hpp"
#include "hecke/hecke.hpp"
#include "io/fixtures.hpp"
#include "weyl/serialize.hpp"

namespace strata::io {

namespace {

std::string point_str(const std::vector<GQ>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
  return s + ")";
}

template <class T>
std::string list_str(const std::vector<T>& v) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << "]";
  return s.str();
}

bool is_source(const std::string& spec) {
  if (std::filesystem::exists(spec)) return true;
  const auto& fx = bundled_fixtures();
  return fx.count(spec) || fx.count(spec + ".json");
}

std::vector<GQ> split_coords(const std::string& s) {
  std::vector<GQ> p;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) fail(ErrorCode::ParseError, "empty coordinate in '" + s + "'");
    p.push_back(GQ::parse(tok));
  }
  if (p.empty()) fail(ErrorCode::ParseError, "empty point");
  return p;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    fail(ErrorCode::ParseError, "malformed JSON: " + text.substr(0, 60));
  }
}

}  // namespace

std::vector<std::vector<GQ>> parse_points(const std::string& spec) {
  json j;
  if (is_source(spec)) {
    j = parse_json_text(read_source(spec));
  } else if (!spec.empty() && (spec.front() == '[' || spec.front() == '{')) {
    j = parse_json_text(spec);
  } else {
    return {split_coords(spec)};
  }
  if (j.is_object()) return expect<SamplesDoc>(parse_json(j), "points").points;
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, "expected a point or a list of points");
  if (j[0].is_array()) {
    std::vector<std::vector<GQ>> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(j[i], "/" + std::to_string(i)));
    return out;
  }
  return {point_from_json(j, "")};
}

GluedPointSpec parse_glued_point(const GluedModelDoc& model, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.empty() || parts[0].empty()) fail(ErrorCode::ParseError, "empty point");
  GluedPointSpec out;
  auto named = model.points.find(parts[0]);
  out.x = named != model.points.end() ? named->second : split_coords(parts[0]);
  const std::size_t factors = model.shape == GluedModelDoc::Shape::Product ? model.spaces.size() : 1;
  if (parts.size() == 1) {
    out.copies.assign(factors, 0);
    return out;
  }
  if (parts.size() - 1 != factors)
    fail(ErrorCode::ParseError, "point '" + spec + "' needs " + std::to_string(factors) + " copy index(es)");
  for (std::size_t k = 1; k < parts.size(); ++k) {
    std::size_t used = 0;
    long long c = 0;
    try {
      c = std::stoll(parts[k], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != parts[k].size() || c < 1) fail(ErrorCode::ParseError, "copy index '" + parts[k] + "' must be a positive integer");
    out.copies.push_back(static_cast<std::size_t>(c - 1));
  }
  return out;
}

Report hecke_mul(const std::string& spec, int radius, const std::string& lhs, const std::string& rhs) {
  if (radius < 1) fail(ErrorCode::ValidationError, "radius must be positive");
  auto group = std::make_shared<weyl::AffineWeyl>(weyl::RootSystemSpec::parse(spec), radius);
  auto elt = [&](const std::string& s) {
    json j = parse_json_text(is_source(s) ? read_source(s) : s);
    try {
      return weyl::element_from_json(*group, j);
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, std::string("bad element: ") + e.what());
    }
  };
  auto a = hecke::HeckeElt::basis(group, elt(lhs));
  auto b = hecke::HeckeElt::basis(group, elt(rhs));
  auto ab = hecke::hecke_mul(a, b);
  Report r;
  r.command = "hecke mul";
  json terms = json::array();
  std::ostringstream t;
  t << "T_x T_y in H(" << group->spec().name() << ")\n";
  for (const auto& [x, c] : ab.terms()) {
    terms.push_back({{"element", weyl::element_to_json(*group, x, weyl::EltForm::Word)},
                     {"translation_form", weyl::element_to_json(*group, x, weyl::EltForm::Translation)},
                     {"length", group->length(x)},
                     {"coefficient", c.str()}});
    t << "  (" << c.str() << ") T" << weyl::element_to_json(*group, x, weyl::EltForm::Word).dump() << "\n";
  }
  t << ab.terms().size() << " term(s)\n";
  r.data = {{"spec", group->spec().name()},
            {"lhs", weyl::element_to_json(*group, elt(lhs), weyl::EltForm::Word)},
            {"rhs", weyl::element_to_json(*group, elt(rhs), weyl::EltForm::Word)},
            {"terms", terms}};
  r.text = t.str();
  return r;
}

Report hecke_check(const HeckeDoc& doc) {
  auto s = hecke::run_suite(doc.spec, doc.radius, doc.triples, doc.pairs, doc.seed);
  Report r;
  r.command = "hecke check";
  r.passed = s.passed();
  r.data = {{"spec", s.spec},
            {"radius", s.radius},
            {"seed", doc.seed},
            {"quadratic", s.quadratic},
            {"associativity", {{"triples", s.associativity_triples}, {"failures", s.associativity_failures}}},
            {"word_independence", {{"pairs", s.word_independence_pairs}, {"failures", s.word_independence_failures}}},
            {"specialization_q1", {{"pairs", s.specialization_pairs}, {"failures", s.specialization_failures}}},
            {"support_violations", s.support_violations},
            {"passed", s.passed()}};
  std::ostringstream t;
  t << "Hecke relation suite for " << s.spec << ", basis elements of length <= " << s.radius << " (seed " << doc.seed << ")\n"
    << "  quadratic relation:     " << (s.quadratic ? "pass" : "FAIL") << "\n"
    << "  associativity:          " << s.associativity_failures << " failure(s) in " << s.associativity_triples << " triples\n"
    << "  word independence:      " << s.word_independence_failures << " failure(s) in " << s.word_independence_pairs << " pairs\n"
    << "  q = 1 specialization:   " << s.specialization_failures << " failure(s) in " << s.specialization_pairs << " pairs\n"
    << "  support bound:          " << s.support_violations << " violation(s)\n"
    << (s.passed() ? "pass" : "FAIL") << "\n";
  r.text = t.str();
  return r;
}

Report exquo(const ActionDoc& action, const std::optional<CocycleDoc>& cocycle, std::optional<std::int64_t> oracle_m) {
  const auto& g = action.action->group();
  auto eq = cocycle ? exquo::twisted_extended_quotient(action.action, cocycle->on(g)) : exquo::extended_quotient(action.action);
  Report r;
  r.command = "exquo";
  std::ostringstream t;
  t << (eq.twisted() ? "twisted extended quotient" : "extended quotient") << " of a group of order " << g.order()
    << " acting on a torus of rank " << action.rank << (action.kernel ? " (modulo a kernel character)" : "") << "\n";
  json strata = json::array();
  for (std::size_t k = 0; k < eq.strata.size(); ++k) {
    const auto& s = eq.strata[k];
    std::vector<std::string> stab, labels;
    for (int h : s.stratum.stabilizer) stab.push_back(g.name(h));
    for (const auto& l : s.labels) labels.push_back(l.name + (l.dim > 1 ? " (dim " + std::to_string(l.dim) + ")" : ""));
    const auto& c = s.stratum.carrier;
    json e{{"index", k + 1},
           {"stabilizer", stab},
           {"stabilizer_order", stab.size()},
           {"conjugates", s.stratum.conjugates},
           {"carrier_dim", c.rank_fixed},
           {"torsion", c.torsion},
           {"carrier_components", c.component_count},
           {"equations", c.equations()},
           {"multiplicity", s.multiplicity()},
           {"labels", labels}};
    if (!eq.twisted()) e["label_orbits"] = s.label_orbits;
    strata.push_back(e);
    t << "stratum " << k + 1 << ": stabilizer " << list_str(stab) << " (order " << stab.size() << ", " << s.stratum.conjugates
      << " conjugate(s)), carrier dim " << c.rank_fixed << ", torsion " << list_str(c.torsion) << ", multiplicity "
      << s.multiplicity() << "\n";
    t << "  carrier: " << (c.equations().empty() ? std::string("whole torus") : "") ;
    for (std::size_t i = 0; i < c.equations().size(); ++i) t << (i ? ", " : "") << c.equations()[i];
    t << "\n  fiber: " << list_str(labels) << "\n";
  }
  const auto components = exquo::component_count(eq);
  r.data = {{"twisted", eq.twisted()}, {"group_order", g.order()}, {"rank", action.rank}, {"strata", strata}, {"components", components}};
  t << "irreducible components: " << components << "\n";
  if (oracle_m) {
    auto o = exquo::discrete_oracle(eq, *oracle_m);
    r.passed = o.ok();
    r.data["oracle"] = {{"m", o.m}, {"points", o.points}, {"mismatches", o.mismatches}, {"unassigned", o.unassigned},
                        {"stratum_points", o.stratum_points}, {"failures", o.failures}};
    t << "oracle on mu_" << o.m << ": " << o.points << " points, " << o.mismatches << " mismatch(es), " << o.unassigned
      << " unassigned: " << (o.ok() ? "pass" : "FAIL") << "\n";
    for (const auto& f : o.failures) t << "  " << f << "\n";
  }
  r.text = t.str();
  return r;
}

Report fiber(const AlgebraDoc& algebra, const std::vector<std::vector<GQ>>& points) {
  Report r;
  r.command = "fiber";
  std::ostringstream t;
  t << algebra.desc.kind() << (algebra.name.empty() ? "" : " '" + algebra.name + "'") << "\n";
  json rows = json::array();
  for (const auto& p : points) {
    auto f = findim::build_fiber(algebra.desc, p);
    auto s = findim::analyze(f);
    json chars = json::array();
    for (std::size_t b = 0; b < s.blocks.size(); ++b) chars.push_back(point_to_json(findim::central_character(f, s, b)));
    rows.push_back({{"point", point_to_json(p)},
                    {"dim", f.dim()},
                    {"radical_dim", s.radical.dim()},
                    {"center_dim", s.center_dim},
                    {"blocks", s.block_dims()},
                    {"central_characters", chars}});
    t << "at " << point_str(p) << ": dim " << f.dim() << ", radical " << s.radical.dim() << ", blocks "
      << list_str(s.block_dims()) << " (" << s.blocks.size() << " irreducible(s))\n";
  }
  r.data = {{"kind", algebra.desc.kind()}, {"fibers", rows}};
  r.text = t.str();
  return r;
}

Report certify(const CertificateDoc& cert, const std::optional<std::vector<std::vector<GQ>>>& samples) {
  const auto& pts = samples ? *samples : cert.samples;
  if (pts.empty()) fail(ErrorCode::ValidationError, "no sample points: pass --samples or list them in the certificate");
  auto rep = findim::verify_certificate(cert.cert, pts);
  Report r;
  r.command = "certify";
  r.passed = rep.accepted;
  json steps = json::array();
  std::ostringstream t;
  t << "certificate " << cert.cert.start << " ~> " << cert.cert.end << ", " << cert.cert.steps.size() << " step(s), "
    << pts.size() << " sample point(s)\n";
  if (!rep.chain_error.empty()) t << "chain: " << rep.chain_error << "\n";
  for (const auto& s : rep.steps) {
    steps.push_back({{"index", s.index + 1}, {"kind", s.kind}, {"description", s.description}, {"ok", s.ok},
                     {"samples_checked", s.samples_checked}, {"failures", s.failures}});
    t << "step " << s.index + 1 << " (" << s.kind << ", " << s.description << "): " << (s.ok ? "ok" : "FAIL") << "\n";
    for (const auto& f : s.failures) t << "  " << f << "\n";
  }
  json samples_json = json::array();
  for (const auto& p : pts) samples_json.push_back(point_to_json(p));
  r.data = {{"accepted", rep.accepted}, {"scope", rep.scope}, {"chain_error", rep.chain_error},
            {"steps", steps}, {"samples", samples_json}};
  t << (rep.accepted ? "accepted" : "rejected") << " (scope: " << rep.scope << ", checked at the sample points only)\n";
  r.text = t.str();
  return r;
}

Report glue_multiplicity(const GluedModelDoc& model, const std::string& point) {
  auto p = parse_glued_point(model, point);
  Report r;
  r.command = "glue multiplicity";
  std::size_t delta = 0;
  if (model.shape == GluedModelDoc::Shape::Product) {
    delta = 1;
    std::size_t off = 0;
    for (const auto& f : model.spaces) {
      const auto d = static_cast<std::size_t>(f.base.dim);
      if (off + d > p.x.size()) fail(ErrorCode::PointOffBase, "point has too few coordinates");
      delta *= glue::multiplicity_at(f, std::vector<GQ>(p.x.begin() + static_cast<std::ptrdiff_t>(off), p.x.begin() + static_cast<std::ptrdiff_t>(off + d)));
      off += d;
    }
    if (off != p.x.size()) fail(ErrorCode::PointOffBase, "point has too many coordinates");
  } else {
    bool on_some = false;
    for (const auto& s : model.spaces)
      if (s.base.on_base(p.x)) {
        on_some = true;
        delta += glue::multiplicity_at(s, p.x);
      }
    if (!on_some) fail(ErrorCode::PointOffBase, point_str(p.x) + " lies on no part of the model");
  }
  r.data = {{"point", point_to_json(p.x)}, {"multiplicity", delta}};
  r.text = "multiplicity at " + point_str(p.x) + ": " + std::to_string(delta) + "\n";
  return r;
}

Report glue_closure(const GluedModelDoc& model, const std::string& set, const std::string& point) {
  auto it = model.sets.find(set);
  if (it == model.sets.end()) fail(ErrorCode::ValidationError, "model has no set named '" + set + "'");
  auto p = parse_glued_point(model, point);
  bool in = false;
  if (model.shape == GluedModelDoc::Shape::Product) {
    in = glue::closure_contains(model.product(), {it->second.charts, it->second.locus, it->second.minus}, {p.copies, p.x});
  } else if (model.shape == GluedModelDoc::Shape::Single) {
    glue::SetDescriptor s{{}, it->second.locus, it->second.minus};
    for (const auto& c : it->second.charts) s.charts.push_back(c[0]);
    in = glue::closure_contains(model.spaces[0], s, {p.copies[0], p.x});
  } else {
    fail(ErrorCode::UnsupportedDescriptor, "closure queries need a single glued space or a product");
  }
  std::string copies;
  for (std::size_t k = 0; k < p.copies.size(); ++k) copies += (k ? "," : "") + std::to_string(p.copies[k] + 1);
  Report r;
  r.command = "glue closure";
  json cj = json::array();
  for (auto c : p.copies) cj.push_back(c + 1);
  r.data = {{"set", set}, {"point", point_to_json(p.x)}, {"copies", cj}, {"in_closure", in}};
  r.text = "copy " + copies + " of " + point_str(p.x) + (in ? " lies" : " does not lie") + " in the closure of " + set + "\n";
  return r;
}

Report glue_compare(const GluedModelDoc& a, const GluedModelDoc& b) {
  auto c = glue::distinguishing_invariants(a.model(), b.model());
  auto inv = [](const glue::ModelInvariants& m) {
    return json{{"components", m.components}, {"non_separated_pair", m.non_separated_pair}, {"multiplicity_profile", m.multiplicity_profile}};
  };
  auto line = [](const std::string& name, const glue::ModelInvariants& m) {
    std::ostringstream t;
    t << "  " << name << ": " << m.components << " component(s), " << (m.non_separated_pair ? "has" : "no")
      << " non-separated pair, multiplicity profile " << list_str(m.multiplicity_profile) << "\n";
    return t.str();
  };
  Report r;
  r.command = "glue compare";
  const std::string na = a.name.empty() ? "first" : a.name, nb = b.name.empty() ? "second" : b.name;
  r.data = {{"first", {{"name", na}, {"invariants", inv(c.first)}}},
            {"second", {{"name", nb}, {"invariants", inv(c.second)}}},
            {"differing", c.differing},
            {"verdict", c.verdict}};
  r.text = line(na, c.first) + line(nb, c.second) + "differing: " + (c.differing.empty() ? std::string("none") : list_str(c.differing)) +
           "\nverdict: " + c.verdict + "\n";
  return r;
}

Report selftest() {
  Report r;
  r.command = "selftest";
  json rows = json::array();
  std::ostringstream t;
  int passed = 0;
  for (const auto& c : acceptance::run_all()) {
    rows.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
    t << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title << ": " << c.detail << "\n";
    passed += c.passed ? 1 : 0;
    r.passed = r.passed && c.passed;
  }
  t << passed << "/" << rows.size() << " criteria passed\n";
  r.data = {{"criteria", rows}, {"passed", passed}, {"total", rows.size()}};
  r.text = t.str();
  return r;
}

}  // namespace strata::io
