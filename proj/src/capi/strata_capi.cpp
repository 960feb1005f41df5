#include "strata/strata.h"

#include <new>
#include <string>

#include "exact/error.hpp"
#include "io/commands.hpp"
#include "io/fixtures.hpp"

struct strata_doc {
  strata::io::Descriptor desc;
  std::string type;
  std::string json;
};

struct strata_report {
  strata::io::Report report;
  std::string text;
  std::string json;
};

namespace {

using strata::ErrorCode;

static_assert(static_cast<int>(ErrorCode::Overflow) + 1 == STRATA_ERR_OVERFLOW);
static_assert(static_cast<int>(ErrorCode::ParseError) + 1 == STRATA_ERR_PARSE);

thread_local std::string last_error;

strata_status set_error(strata_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
strata_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return STRATA_OK;
  } catch (const strata::Error& e) {
    return set_error(static_cast<strata_status>(static_cast<int>(e.code()) + 1), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(STRATA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(STRATA_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(STRATA_ERR_INTERNAL, "unknown failure");
  }
}

strata_doc* make_doc(strata::io::Descriptor d) {
  auto* doc = new strata_doc{std::move(d), "", ""};
  doc->type = strata::io::type_name(doc->desc);
  doc->json = strata::io::to_json(doc->desc).dump(2);
  return doc;
}

strata_status emit(strata::io::Report r, strata_report** out) {
  auto* rep = new strata_report{std::move(r), "", ""};
  rep->text = rep->report.text;
  strata::io::json j = rep->report.data;
  j["command"] = rep->report.command;
  j["passed"] = rep->report.passed;
  rep->json = j.dump(2) + "\n";
  *out = rep;
  return STRATA_OK;
}

template <class T>
const T& as(const strata_doc* d, const char* what) {
  if (const auto* p = std::get_if<T>(&d->desc)) return *p;
  strata::fail(ErrorCode::ParseError, std::string(what) + ": document has type '" + d->type + "'");
}

bool missing(const void* p) { return p == nullptr; }

}  // namespace

#define STRATA_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(STRATA_ERR_INVALID_ARGUMENT, msg)

extern "C" {

const char* strata_version(void) { return "0.1.0"; }

const char* strata_status_name(strata_status status) {
  switch (status) {
    case STRATA_OK:
      return "Ok";
    case STRATA_ERR_INVALID_ARGUMENT:
      return "InvalidArgument";
    case STRATA_ERR_INTERNAL:
      return "Internal";
    default:
      break;
  }
  const int c = static_cast<int>(status) - 1;
  if (c < 0 || c > static_cast<int>(ErrorCode::Overflow)) return "Unknown";
  return strata::error_code_name(static_cast<ErrorCode>(c)).data();
}

const char* strata_last_error(void) { return last_error.c_str(); }

strata_status strata_doc_load(const char* source, strata_doc** out) {
  STRATA_REQUIRE(!missing(source) && !missing(out), "source and out must be non-null");
  *out = nullptr;
  return guarded([&] { *out = make_doc(strata::io::load(source)); });
}

strata_status strata_doc_parse(const char* text, strata_doc** out) {
  STRATA_REQUIRE(!missing(text) && !missing(out), "text and out must be non-null");
  *out = nullptr;
  return guarded([&] { *out = make_doc(strata::io::parse(text)); });
}

const char* strata_doc_type(const strata_doc* doc) { return doc ? doc->type.c_str() : ""; }
const char* strata_doc_json(const strata_doc* doc) { return doc ? doc->json.c_str() : ""; }
void strata_doc_free(strata_doc* doc) { delete doc; }

size_t strata_fixture_count(void) { return strata::io::bundled_fixtures().size(); }

const char* strata_fixture_name(size_t index) {
  const auto& fx = strata::io::bundled_fixtures();
  if (index >= fx.size()) return nullptr;
  return std::next(fx.begin(), static_cast<std::ptrdiff_t>(index))->first.c_str();
}

strata_status strata_hecke_mul(const char* spec, int radius, const char* lhs, const char* rhs, strata_report** out) {
  STRATA_REQUIRE(spec && lhs && rhs && out, "spec, lhs, rhs and out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::hecke_mul(spec, radius, lhs, rhs), out); });
}

strata_status strata_hecke_check(const char* spec, int radius, int triples, int pairs, uint64_t seed, strata_report** out) {
  STRATA_REQUIRE(spec && out, "spec and out must be non-null");
  STRATA_REQUIRE(triples >= 0 && pairs >= 0, "triples and pairs must be non-negative");
  *out = nullptr;
  return guarded([&] {
    strata::io::HeckeDoc d;
    d.spec = spec;
    d.radius = radius;
    d.triples = triples;
    d.pairs = pairs;
    d.seed = seed;
    emit(strata::io::hecke_check(d), out);
  });
}

strata_status strata_hecke_check_doc(const strata_doc* hecke, strata_report** out) {
  STRATA_REQUIRE(hecke && out, "hecke and out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::hecke_check(as<strata::io::HeckeDoc>(hecke, "hecke")), out); });
}

strata_status strata_exquo(const strata_doc* action, const strata_doc* cocycle, int64_t oracle_m, strata_report** out) {
  STRATA_REQUIRE(action && out, "action and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    std::optional<strata::io::CocycleDoc> c;
    if (cocycle) c = as<strata::io::CocycleDoc>(cocycle, "cocycle");
    std::optional<std::int64_t> m;
    if (oracle_m > 0) m = oracle_m;
    emit(strata::io::exquo(as<strata::io::ActionDoc>(action, "action"), c, m), out);
  });
}

strata_status strata_fiber(const strata_doc* algebra, const char* points, strata_report** out) {
  STRATA_REQUIRE(algebra && points && out, "algebra, points and out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::fiber(as<strata::io::AlgebraDoc>(algebra, "algebra"), strata::io::parse_points(points)), out); });
}

strata_status strata_certify(const strata_doc* certificate, const char* samples, strata_report** out) {
  STRATA_REQUIRE(certificate && out, "certificate and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    std::optional<std::vector<std::vector<strata::exact::GQ>>> s;
    if (samples) s = strata::io::parse_points(samples);
    emit(strata::io::certify(as<strata::io::CertificateDoc>(certificate, "certificate"), s), out);
  });
}

strata_status strata_glue_multiplicity(const strata_doc* model, const char* point, strata_report** out) {
  STRATA_REQUIRE(model && point && out, "model, point and out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::glue_multiplicity(as<strata::io::GluedModelDoc>(model, "model"), point), out); });
}

strata_status strata_glue_closure(const strata_doc* model, const char* set, const char* point, strata_report** out) {
  STRATA_REQUIRE(model && set && point && out, "model, set, point and out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::glue_closure(as<strata::io::GluedModelDoc>(model, "model"), set, point), out); });
}

strata_status strata_glue_compare(const strata_doc* first, const strata_doc* second, strata_report** out) {
  STRATA_REQUIRE(first && second && out, "both models and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    emit(strata::io::glue_compare(as<strata::io::GluedModelDoc>(first, "model"), as<strata::io::GluedModelDoc>(second, "model")), out);
  });
}

strata_status strata_selftest(strata_report** out) {
  STRATA_REQUIRE(out, "out must be non-null");
  *out = nullptr;
  return guarded([&] { emit(strata::io::selftest(), out); });
}

int strata_report_passed(const strata_report* report) { return report && report->report.passed ? 1 : 0; }

const char* strata_report_render(const strata_report* report, strata_format format) {
  if (!report) return "";
  return format == STRATA_FORMAT_JSON ? report->json.c_str() : report->text.c_str();
}

void strata_report_free(strata_report* report) { delete report; }

}  // extern "C"
