#ifndef MCFORM_RUN_HPP
#define MCFORM_RUN_HPP

#include <string>

#include "mcform/report.hpp"

namespace mcform {

/// Options shared by all commands; zero/empty members mean "default".
struct RunOptions {
  int trunc = 0;             ///< override the problem file's truncation order
  int window = 0;            ///< stabilisation window margin
  int genus = 0;             ///< genus for normal-form (default: from group order)
  std::string replay_json;   ///< a prior normal-form report whose log is replayed
  std::string builtin;       ///< builtin algebra name (qh-split, semidirect-check)
  int builtin_param = 0;
  std::string element;       ///< eigensplit element override, e.g. "h"
};

struct RunResult {
  int exit_code = 0;  ///< 0 ok, 1 mathematical failure, 2 input error
  Report report;
};

/// Dispatches one command against a problem file.  Commands:
///   mc-check | hh | invariant-hh | twisted-hh | jacobian | exactness |
///   classify-cubic | normal-form | qh-split | semidirect-check
/// Identical input bytes and options produce byte-identical reports.
RunResult run_command(const std::string& command, const std::string& problem_text,
                      const RunOptions& opts);

}  // namespace mcform

#endif
