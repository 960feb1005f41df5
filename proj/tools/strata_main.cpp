// strata command-line front end. Uses only the public C API.
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "strata/strata.h"

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2 };

struct DocFree {
  void operator()(strata_doc* d) const { strata_doc_free(d); }
};
struct ReportFree {
  void operator()(strata_report* r) const { strata_report_free(r); }
};
using Doc = std::unique_ptr<strata_doc, DocFree>;
using Report = std::unique_ptr<strata_report, ReportFree>;

struct InputError {
  strata_status status;
  std::string message;
};

void check(strata_status s) {
  if (s != STRATA_OK) throw InputError{s, strata_last_error()};
}

Doc load(const std::string& source) {
  strata_doc* d = nullptr;
  check(strata_doc_load(source.c_str(), &d));
  return Doc(d);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata: exact computations for stratified equivalence of finite type algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--report", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.set_version_flag("--version", strata_version());

  auto* hecke = app.add_subcommand("hecke", "Affine Hecke algebra products and relation checks");
  hecke->require_subcommand(1);
  std::string spec = "A_SL:3";
  int radius = 6, triples = 200, pairs = 100;
  std::uint64_t seed = 1;
  std::string lhs, rhs, suite;
  auto* mul = hecke->add_subcommand("mul", "Product T_lhs T_rhs as an exact term list");
  mul->add_option("--spec", spec, "Root datum, A_GL:n or A_SL:n")->capture_default_str();
  mul->add_option("--radius", radius, "Length bound of the Weyl group cache")->capture_default_str();
  mul->add_option("--lhs", lhs, "Left element (JSON or file)")->required();
  mul->add_option("--rhs", rhs, "Right element (JSON or file)")->required();
  auto* hcheck = hecke->add_subcommand("check", "Randomized relation suite");
  hcheck->add_option("--spec", spec, "Root datum, A_GL:n or A_SL:n")->capture_default_str();
  hcheck->add_option("--radius", radius, "Length bound of sampled basis elements")->capture_default_str();
  hcheck->add_option("--triples", triples, "Associativity triples")->capture_default_str();
  hcheck->add_option("--pairs", pairs, "Products checked at q = 1")->capture_default_str();
  hcheck->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  hcheck->add_option("--suite", suite, "Hecke document overriding the flags");

  auto* exq = app.add_subcommand("exquo", "Strata of the (twisted) extended quotient");
  std::string action, cocycle;
  std::int64_t oracle_m = 0;
  exq->add_option("--action", action, "Action document")->required();
  exq->add_option("--cocycle", cocycle, "Cocycle document (twisted quotient)");
  exq->add_option("--m", oracle_m, "Check against the brute-force oracle on mu_m^n");

  auto* fib = app.add_subcommand("fiber", "Wedderburn data of fiber algebras");
  std::string algebra, point;
  fib->add_option("--algebra", algebra, "Algebra document")->required();
  fib->add_option("--point", point, "Point(s): file, JSON array or a,b,c")->required();

  auto* cert = app.add_subcommand("certify", "Verify a stratified equivalence certificate at sample points");
  std::string certificate, samples;
  cert->add_option("--certificate", certificate, "Certificate document")->required();
  cert->add_option("--samples", samples, "Sample points (default: those in the certificate)");

  auto* glue = app.add_subcommand("glue", "Queries on glued (non-separated) models");
  std::string model, query, set, other;
  glue->add_option("--model", model, "Glued model document")->required();
  glue->add_option("--query", query, "Query")->required()->check(CLI::IsMember({"multiplicity", "closure", "compare"}));
  glue->add_option("--set", set, "Named set of the model (closure)");
  glue->add_option("--point", point, "name[:copy...] or x1,x2[:copy...] (multiplicity, closure)");
  glue->add_option("--other", other, "Second model (compare)");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite on the bundled fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }
  const strata_format fmt = format == "json" ? STRATA_FORMAT_JSON : STRATA_FORMAT_TEXT;

  try {
    strata_report* raw = nullptr;
    if (mul->parsed()) {
      check(strata_hecke_mul(spec.c_str(), radius, lhs.c_str(), rhs.c_str(), &raw));
    } else if (hcheck->parsed()) {
      if (!suite.empty())
        check(strata_hecke_check_doc(load(suite).get(), &raw));
      else
        check(strata_hecke_check(spec.c_str(), radius, triples, pairs, seed, &raw));
    } else if (exq->parsed()) {
      Doc a = load(action);
      Doc c = cocycle.empty() ? Doc() : load(cocycle);
      check(strata_exquo(a.get(), c.get(), oracle_m, &raw));
    } else if (fib->parsed()) {
      check(strata_fiber(load(algebra).get(), point.c_str(), &raw));
    } else if (cert->parsed()) {
      check(strata_certify(load(certificate).get(), samples.empty() ? nullptr : samples.c_str(), &raw));
    } else if (glue->parsed()) {
      Doc m = load(model);
      if (query == "multiplicity") {
        if (point.empty()) throw InputError{STRATA_ERR_INVALID_ARGUMENT, "--query multiplicity needs --point"};
        check(strata_glue_multiplicity(m.get(), point.c_str(), &raw));
      } else if (query == "closure") {
        if (point.empty() || set.empty()) throw InputError{STRATA_ERR_INVALID_ARGUMENT, "--query closure needs --set and --point"};
        check(strata_glue_closure(m.get(), set.c_str(), point.c_str(), &raw));
      } else {
        if (other.empty()) throw InputError{STRATA_ERR_INVALID_ARGUMENT, "--query compare needs --other"};
        check(strata_glue_compare(m.get(), load(other).get(), &raw));
      }
    } else if (self->parsed()) {
      check(strata_selftest(&raw));
    }
    Report report(raw);
    std::fputs(strata_report_render(report.get(), fmt), stdout);
    return strata_report_passed(report.get()) ? kPass : kCheckFailed;
  } catch (const InputError& e) {
    if (fmt == STRATA_FORMAT_JSON) {
      nlohmann::json j{{"error", {{"code", strata_status_name(e.status)}, {"message", e.message}}}, {"passed", false}};
      std::fputs((j.dump(2) + "\n").c_str(), stdout);
    }
    std::fprintf(stderr, "strata: %s\n", e.message.c_str());
    return kInputError;
  }
}
