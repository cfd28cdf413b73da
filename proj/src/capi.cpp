#include "mcform.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "mcform/parse.hpp"
#include "mcform/run.hpp"

using mcform::Errc;
using mcform::Error;

struct mcform_problem {
  std::string text;  // validated problem source; re-parsed per run
};

struct mcform_result {
  std::string report;
  std::string error;
  int exit_code = 0;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

void mcform_options_init(mcform_options* opts) {
  if (opts) *opts = mcform_options{};
}

int mcform_problem_parse(const char* text, mcform_problem** out, char** errmsg) {
  if (errmsg) *errmsg = nullptr;
  if (!text || !out) return MCFORM_EINPUT;
  *out = nullptr;
  try {
    mcform::parse_problem(text);  // validate eagerly
  } catch (const Error& e) {
    if (errmsg) *errmsg = dup_string(e.what());
    return mcform::errc_is_math(e.code()) ? MCFORM_EMATH : MCFORM_EINPUT;
  } catch (const std::exception& e) {
    if (errmsg) *errmsg = dup_string(e.what());
    return MCFORM_EINPUT;
  }
  *out = new mcform_problem{text};
  return MCFORM_OK;
}

void mcform_problem_free(mcform_problem* p) { delete p; }

int mcform_run(const char* command, const mcform_problem* problem,
               const mcform_options* opts, mcform_result** out) {
  if (!command || !out) return MCFORM_EINPUT;
  *out = nullptr;
  mcform::RunOptions ro;
  if (opts) {
    ro.trunc = opts->trunc;
    ro.window = opts->window;
    ro.genus = opts->genus;
    if (opts->replay_json) ro.replay_json = opts->replay_json;
    if (opts->builtin) ro.builtin = opts->builtin;
    ro.builtin_param = opts->builtin_param;
    if (opts->element) ro.element = opts->element;
  }
  auto* res = new mcform_result{};
  try {
    mcform::RunResult rr =
        mcform::run_command(command, problem ? problem->text : std::string(), ro);
    res->report = mcform::canonical_dump(rr.report);
    res->exit_code = rr.exit_code;
    if (rr.report.contains("error")) res->error = rr.report["error"].get<std::string>();
  } catch (const std::exception& e) {
    res->error = e.what();
    res->exit_code = MCFORM_EINPUT;
  }
  *out = res;
  return res->exit_code;
}

const char* mcform_result_report(const mcform_result* r) {
  return r ? r->report.c_str() : "";
}

const char* mcform_result_error(const mcform_result* r) {
  return r ? r->error.c_str() : "";
}

void mcform_result_free(mcform_result* r) { delete r; }

void mcform_string_free(char* s) { std::free(s); }

const char* mcform_version(void) { return "mcform 0.1.0"; }

}  // extern "C"
