#include <cstdio>
#include <cstring>

#include "strata/strata.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      std::fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static bool contains(const char* hay, const char* needle) { return std::strstr(hay, needle) != nullptr; }

int main() {
  EXPECT(std::strcmp(strata_status_name(STRATA_ERR_PARSE), "ParseError") == 0);
  EXPECT(strata_fixture_count() >= 10);
  EXPECT(strata_fixture_name(strata_fixture_count()) == nullptr);

  strata_doc* bad = nullptr;
  EXPECT(strata_doc_parse("", &bad) == STRATA_ERR_PARSE);
  EXPECT(bad == nullptr);
  EXPECT(contains(strata_last_error(), "line"));
  EXPECT(strata_doc_parse(nullptr, &bad) == STRATA_ERR_INVALID_ARGUMENT);
  EXPECT(strata_doc_parse(R"({"type":"action","rank":2,"group":{"generators":[[2,1]]},"generator_matrices":[[[2,0],[0,1]]]})", &bad) ==
         STRATA_ERR_VALIDATION);

  strata_doc *action = nullptr, *rho = nullptr;
  EXPECT(strata_doc_load("sl5d-action.json", &action) == STRATA_OK);
  EXPECT(strata_doc_load("rho.json", &rho) == STRATA_OK);
  EXPECT(std::strcmp(strata_doc_type(action), "action") == 0);
  EXPECT(contains(strata_doc_json(rho), "projective"));

  strata_report* rep = nullptr;
  EXPECT(strata_exquo(action, rho, 12, &rep) == STRATA_OK);
  EXPECT(strata_report_passed(rep) == 1);
  EXPECT(contains(strata_report_render(rep, STRATA_FORMAT_JSON), "\"multiplicity\": 2"));
  EXPECT(contains(strata_report_render(rep, STRATA_FORMAT_TEXT), "irreducible components"));
  strata_report_free(rep);

  // wrong document kind for the cocycle slot
  EXPECT(strata_exquo(action, action, 0, &rep) == STRATA_ERR_PARSE);
  EXPECT(rep == nullptr);

  strata_doc* alg = nullptr;
  EXPECT(strata_doc_load("example-8.2-algebra.json", &alg) == STRATA_OK);
  EXPECT(strata_fiber(alg, "0", &rep) == STRATA_OK);
  EXPECT(contains(strata_report_render(rep, STRATA_FORMAT_TEXT), "blocks [1, 1]"));
  strata_report_free(rep);
  EXPECT(strata_fiber(alg, "1,2", &rep) == STRATA_ERR_POINT_OFF_BASE);

  strata_doc* line = nullptr;
  EXPECT(strata_doc_load("doubled-line.json", &line) == STRATA_OK);
  EXPECT(strata_glue_closure(line, "punctured-line", "origin:2", &rep) == STRATA_OK);
  EXPECT(contains(strata_report_render(rep, STRATA_FORMAT_JSON), "\"in_closure\": true"));
  strata_report_free(rep);
  EXPECT(strata_glue_closure(line, "no-such-set", "origin:2", &rep) == STRATA_ERR_VALIDATION);

  EXPECT(strata_hecke_mul("A_SL:3", 6, R"({"omega":0,"word":[1]})", R"({"omega":0,"word":[1]})", &rep) == STRATA_OK);
  EXPECT(contains(strata_report_render(rep, STRATA_FORMAT_TEXT), "2 term(s)"));
  strata_report_free(rep);

  strata_doc_free(alg);
  strata_doc_free(line);
  strata_doc_free(action);
  strata_doc_free(rho);
  strata_doc_free(nullptr);
  strata_report_free(nullptr);

  if (failures) std::fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
