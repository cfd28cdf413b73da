// C API smoke tests: handles, error codes, report strings.  Compiled as
// C++ but uses only the public C surface.
#include <cstdio>
#include <cstring>
#include <string>

#include "mcform.h"

static int failures = 0;

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

static const char* kProblem =
    "vars v1 v2 v3\n"
    "trunc 12\n"
    "group cyclic 5 weights 1 1 3\n"
    "W = -1*v1*v2*v3 + v1^5 + v2^5 + v3^5\n";

int main() {
  CHECK(std::strlen(mcform_version()) > 0);

  // parse failure: diagnostic is returned and owned by the caller
  mcform_problem* bad = nullptr;
  char* errmsg = nullptr;
  int rc = mcform_problem_parse("vars v1\nW = v1\n", &bad, &errmsg);
  CHECK(rc == MCFORM_EINPUT);
  CHECK(bad == nullptr);
  CHECK(errmsg != nullptr && std::strstr(errmsg, "trunc") != nullptr);
  mcform_string_free(errmsg);

  mcform_problem* problem = nullptr;
  rc = mcform_problem_parse(kProblem, &problem, &errmsg);
  CHECK(rc == MCFORM_OK);
  CHECK(problem != nullptr);

  mcform_options opts;
  mcform_options_init(&opts);
  mcform_result* result = nullptr;
  rc = mcform_run("invariant-hh", problem, &opts, &result);
  CHECK(rc == MCFORM_OK);
  const char* report = mcform_result_report(result);
  CHECK(std::strstr(report, "\"even\": 2") != nullptr);
  CHECK(std::strstr(report, "\"odd\": 0") != nullptr);
  CHECK(std::strcmp(mcform_result_error(result), "") == 0);

  // identical runs give byte-identical reports
  mcform_result* again = nullptr;
  mcform_run("invariant-hh", problem, &opts, &again);
  CHECK(std::string(report) == mcform_result_report(again));
  mcform_result_free(again);
  mcform_result_free(result);

  // builtin command without a problem handle
  opts.builtin = "qh_moduli_sigma2";
  rc = mcform_run("qh-split", nullptr, &opts, &result);
  CHECK(rc == MCFORM_OK);
  CHECK(std::strstr(mcform_result_report(result), "\"minimal_polynomial\"") != nullptr);
  mcform_result_free(result);

  // mathematical failure is MCFORM_EMATH with the report still present
  mcform_options plain;
  mcform_options_init(&plain);
  mcform_problem* degen = nullptr;
  rc = mcform_problem_parse("vars v1 v2 v3\ntrunc 12\nW = v1^2*v2^2\n", &degen, &errmsg);
  CHECK(rc == MCFORM_OK);
  rc = mcform_run("exactness", degen, &plain, &result);
  CHECK(rc == MCFORM_EMATH);
  CHECK(std::strstr(mcform_result_report(result), "\"witness\"") != nullptr);
  mcform_result_free(result);
  mcform_problem_free(degen);

  mcform_problem_free(problem);

  if (failures == 0) std::printf("test_capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
