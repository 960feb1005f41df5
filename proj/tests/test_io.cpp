#include "doctest.h"
#include "exact/error.hpp"
#include "io/descriptors.hpp"
#include "io/fixtures.hpp"

using namespace strata;
using namespace strata::io;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Overflow;
}

std::string message_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::vector<GQ> pt(std::initializer_list<std::int64_t> xs) {
  std::vector<GQ> p;
  for (auto x : xs) p.emplace_back(x);
  return p;
}

}  // namespace

TEST_CASE("every bundled fixture parses and round-trips") {
  const auto& fx = bundled_fixtures();
  CHECK(fx.size() >= 10);
  for (const auto& [name, text] : fx) {
    CAPTURE(name);
    Descriptor d = parse(text);
    json j = to_json(d);
    CHECK(j == json::parse(text));
    CHECK(to_json(parse(j.dump())) == j);
  }
}

TEST_CASE("sl5d action and rho cocycle") {
  auto a = expect<ActionDoc>(load("sl5d-action.json"), "action");
  CHECK(a.rank == 4);
  CHECK(a.action->group().order() == 4);
  CHECK(a.action->matrix(1) == exact::IntMatrix::from_rows({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}, 4));
  auto c = expect<CocycleDoc>(load("rho"), "cocycle");
  auto cocycle = c.on(a.action->group());
  CHECK(groups::verify_cocycle(a.action->group(), cocycle));
  // rho(e1) rho(e2) = -rho(e2) rho(e1)
  CHECK(cocycle(1, 2) == -cocycle(2, 1));
}

TEST_CASE("explicit generator matrices") {
  const std::string neg = R"({"type":"action","rank":2,"group":{"generators":[[2,1]]},
      "generator_matrices":[[[-1,0],[0,-1]]]})";
  auto a = expect<ActionDoc>(parse(neg), "action");
  CHECK(a.action->matrix(1) == exact::IntMatrix::from_rows({{-1, 0}, {0, -1}}, 2));
  CHECK(to_json(parse(to_json(a).dump())) == to_json(a));

  const std::string singular = R"({"type":"action","rank":2,"group":{"generators":[[2,1]]},
      "generator_matrices":[[[2,0],[0,1]]]})";
  CHECK(code_of([&] { parse(singular); }) == ErrorCode::ValidationError);
  CHECK(message_of([&] { parse(singular); }).find("unimodular") != std::string::npos);
}

TEST_CASE("parse errors carry a location") {
  CHECK(code_of([] { parse(""); }) == ErrorCode::ParseError);
  CHECK(message_of([] { parse("{\n  \"type\": \"action\",\n  \"rank\": }"); }).find("line 3") != std::string::npos);
  CHECK(code_of([] { parse("{}"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse(R"({"type":"widget"})"); }) == ErrorCode::ParseError);
  auto msg = message_of([] { parse(R"({"type":"action","rank":"two","group":{"generators":[[1]]}})"); });
  CHECK(msg.find("/rank") != std::string::npos);
  msg = message_of([] { parse(R"({"type":"samples","points":[["1"],["1/0"]]})"); });
  CHECK(msg.find("/points/1/0") != std::string::npos);
  CHECK(code_of([] { load("no-such-fixture.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { expect<CocycleDoc>(load("sl5d-action"), "cocycle"); }) == ErrorCode::ParseError);
}

TEST_CASE("validation errors name the invariant") {
  const std::string bad_cocycle = R"({"type":"cocycle","group":{"generators":[[2,1]]},
      "values":[{"g":"[2,1]","h":"[2,1]","value":"2"}]})";
  CHECK(code_of([&] { parse(bad_cocycle); }) == ErrorCode::InvalidCocycle);
  const std::string bad_pattern = R"({"type":"algebra","kind":"matrix_ideal_pattern","base":{"kind":"affine","dim":1},
      "Y":[{"coefficients":["1"],"value":"0"}],"blocks":[[["I_Y","O"],["O","I_Y"]]]})";
  CHECK(code_of([&] { parse(bad_pattern); }) == ErrorCode::ValidationError);
  const std::string bad_entry = R"({"type":"algebra","kind":"matrix_ideal_pattern","base":{"kind":"affine","dim":1},
      "blocks":[[["Q"]]]})";
  CHECK(message_of([&] { parse(bad_entry); }).find("/blocks/0/0/0") != std::string::npos);
  const std::string untwisted_with_cocycle = R"({"type":"algebra","kind":"crossed_product",
      "action":{"rank":2,"group":{"generators":[[2,1]]}},
      "cocycle":{"group":{"generators":[[2,1]]}}})";
  CHECK(code_of([&] { parse(untwisted_with_cocycle); }) == ErrorCode::ParseError);
}

TEST_CASE("fixtures drive the modules") {
  auto a = expect<ActionDoc>(load("gl2-iwahori.json"), "action");
  REQUIRE(a.theta);
  auto eq = exquo::extended_quotient(a.action);
  auto space = glue::from_theta(eq, exquo::theta_glue_data(eq, a.theta->build(eq)));
  CHECK(glue::multiplicity_at(space, {GQ(1), GQ(4)}) == 2);
  CHECK(glue::multiplicity_at(space, {GQ(2), GQ(2)}) == 1);

  auto cert = expect<CertificateDoc>(load("example-8.2-certificate.json"), "certificate");
  CHECK(cert.samples.size() >= 5);
  auto rep = findim::verify_certificate(cert.cert, cert.samples);
  CHECK(rep.accepted);

  auto line = expect<GluedModelDoc>(load("doubled-line.json"), "model");
  const auto& set = line.sets.at("punctured-line");
  glue::SetDescriptor s{set.charts[0], set.locus, set.minus};
  CHECK(glue::closure_contains(line.spaces[0], s, {1, line.points.at("origin")}));
  CHECK(glue::closure_contains(line.spaces[0], s, {0, line.points.at("origin")}));

  auto square = expect<GluedModelDoc>(load("doubled-line-square.json"), "model");
  CHECK(code_of([&] { square.model(); }) == ErrorCode::UnsupportedDescriptor);
  const auto& diag = square.sets.at("diagonal");
  for (std::size_t x : {0u, 1u})
    for (std::size_t y : {0u, 1u})
      CHECK(glue::closure_contains(square.product(), {diag.charts, diag.locus, diag.minus}, {{x, y}, pt({0, 0})}));

  auto prim = expect<GluedModelDoc>(load("example-8.2-prim.json"), "model").model();
  auto xy = expect<GluedModelDoc>(load("example-8.2-xy.json"), "model").model();
  CHECK(glue::distinguishing_invariants(prim, xy).verdict == "not homeomorphic");

  auto h = expect<HeckeDoc>(load("sl3-hecke.json"), "hecke");
  CHECK(h.spec == "A_SL:3");
}

TEST_CASE("groups given by their multiplication table") {
  const std::string c2 = R"({"type":"action","rank":2,"kernel":[1,1],
      "group":{"order":2,"table":[[0,1],[1,0]],"names":["e","s"]},
      "matrices":{"e":[[1,0],[0,1]],"s":[[0,1],[1,0]]}})";
  auto a = expect<ActionDoc>(parse(c2), "action");
  CHECK(a.action->group().order() == 2);
  CHECK(a.action->matrix(1) == exact::IntMatrix::from_rows({{0, 1}, {1, 0}}, 2));
  CHECK(to_json(parse(to_json(a).dump())) == to_json(a));
  CHECK(exquo::component_count(exquo::extended_quotient(a.action)) == 3);

  const std::string missing = R"({"type":"action","rank":2,
      "group":{"order":2,"table":[[0,1],[1,0]],"names":["e","s"]},
      "matrices":{"e":[[1,0],[0,1]]}})";
  CHECK(code_of([&] { parse(missing); }) == ErrorCode::ValidationError);
  const std::string not_hom = R"({"type":"action","rank":2,
      "group":{"order":2,"table":[[0,1],[1,0]],"names":["e","s"]},
      "matrices":{"e":[[1,0],[0,1]],"s":[[1,1],[0,1]]}})";
  CHECK(message_of([&] { parse(not_hom); }).find("homomorphism") != std::string::npos);
  CHECK(code_of([] { parse(R"({"type":"action","rank":1,"group":{"order":2,"table":[[0,1],[1,1]]},"matrices":{}})"); }) ==
        ErrorCode::ValidationError);

  const std::string v4 = R"({"type":"cocycle",
      "group":{"order":4,"table":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],"names":["e","e1","e2","e3"]},
      "values":[{"g":"e1","h":"e2","value":"-1"},{"g":"e1","h":"e3","value":"1"}]})";
  CHECK(code_of([&] { parse(v4); }) == ErrorCode::InvalidCocycle);
}
