#ifndef STRATA_STRATA_H
#define STRATA_STRATA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STRATA_BUILDING_LIBRARY)
#    define STRATA_API __declspec(dllexport)
#  else
#    define STRATA_API __declspec(dllimport)
#  endif
#else
#  define STRATA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns STRATA_OK or an error code; the message of the last
   failure on the calling thread is available from strata_last_error(). */
typedef enum strata_status {
  STRATA_OK = 0,
  STRATA_ERR_DIVISION_BY_ZERO = 1,
  STRATA_ERR_SPEC_MISMATCH = 2,
  STRATA_ERR_BALL_EXCEEDED = 3,
  STRATA_ERR_RADIUS_TOO_LARGE = 4,
  STRATA_ERR_NOT_W_INVARIANT = 5,
  STRATA_ERR_NOT_A_SUBGROUP = 6,
  STRATA_ERR_GROUP_TOO_LARGE = 7,
  STRATA_ERR_CHAR_FIELD = 8,
  STRATA_ERR_INVALID_COCYCLE = 9,
  STRATA_ERR_POINT_OFF_TORUS = 10,
  STRATA_ERR_SHIFT_MISSING = 11,
  STRATA_ERR_POINT_OFF_BASE = 12,
  STRATA_ERR_ORBIT_TOO_LARGE = 13,
  STRATA_ERR_SPLIT_FIELD = 14,
  STRATA_ERR_NOT_SCALAR = 15,
  STRATA_ERR_NOT_A_MORPHISM = 16,
  STRATA_ERR_FILTRATION_NOT_RESPECTED = 17,
  STRATA_ERR_LOCUS_OFF_BASE = 18,
  STRATA_ERR_UNSUPPORTED_DESCRIPTOR = 19,
  STRATA_ERR_PARSE = 20,
  STRATA_ERR_VALIDATION = 21,
  STRATA_ERR_OVERFLOW = 22,
  STRATA_ERR_INVALID_ARGUMENT = 100,
  STRATA_ERR_INTERNAL = 101
} strata_status;

typedef enum strata_format { STRATA_FORMAT_TEXT = 0, STRATA_FORMAT_JSON = 1 } strata_format;

/* Parsed and validated descriptor document. */
typedef struct strata_doc strata_doc;
/* Result of a command: a pass/fail flag plus text and JSON renderings. */
typedef struct strata_report strata_report;

STRATA_API const char* strata_version(void);
STRATA_API const char* strata_status_name(strata_status status);
STRATA_API const char* strata_last_error(void);

/* Documents. `source` is a file path or the name of a bundled fixture. */
STRATA_API strata_status strata_doc_load(const char* source, strata_doc** out);
STRATA_API strata_status strata_doc_parse(const char* text, strata_doc** out);
/* "action", "cocycle", "algebra", "certificate", "glued_model", "samples" or "hecke". */
STRATA_API const char* strata_doc_type(const strata_doc* doc);
/* Canonical JSON; owned by the document. */
STRATA_API const char* strata_doc_json(const strata_doc* doc);
STRATA_API void strata_doc_free(strata_doc* doc);

STRATA_API size_t strata_fixture_count(void);
STRATA_API const char* strata_fixture_name(size_t index);

/* Commands. Optional document arguments may be NULL. Points are a file,
   a bundled fixture, a JSON array, or "a,b,c"; glued points are
   "name[:copy...]" or "x1,x2[:copy...]" with 1-based copies. */
STRATA_API strata_status strata_hecke_mul(const char* spec, int radius, const char* lhs, const char* rhs,
                                          strata_report** out);
STRATA_API strata_status strata_hecke_check(const char* spec, int radius, int triples, int pairs, uint64_t seed,
                                            strata_report** out);
/* Runs the suite with the parameters of a "hecke" document. */
STRATA_API strata_status strata_hecke_check_doc(const strata_doc* hecke, strata_report** out);
/* oracle_m <= 0 skips the discrete oracle. */
STRATA_API strata_status strata_exquo(const strata_doc* action, const strata_doc* cocycle, int64_t oracle_m,
                                      strata_report** out);
STRATA_API strata_status strata_fiber(const strata_doc* algebra, const char* points, strata_report** out);
STRATA_API strata_status strata_certify(const strata_doc* certificate, const char* samples, strata_report** out);
STRATA_API strata_status strata_glue_multiplicity(const strata_doc* model, const char* point, strata_report** out);
STRATA_API strata_status strata_glue_closure(const strata_doc* model, const char* set, const char* point,
                                             strata_report** out);
STRATA_API strata_status strata_glue_compare(const strata_doc* first, const strata_doc* second, strata_report** out);
STRATA_API strata_status strata_selftest(strata_report** out);

/* 1 when every check in the report passed. */
STRATA_API int strata_report_passed(const strata_report* report);
/* Owned by the report; JSON output is key-sorted and deterministic. */
STRATA_API const char* strata_report_render(const strata_report* report, strata_format format);
STRATA_API void strata_report_free(strata_report* report);

#ifdef __cplusplus
}
#endif

#endif
