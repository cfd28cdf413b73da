// Command-line front-end; links only the C API.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mcform.h"

int main(int argc, char** argv) {
  CLI::App app{"mcform: exact Maurer-Cartan pairs, Koszul cohomology and "
               "quantum-cohomology eigensplitting"};
  app.set_version_flag("--version", mcform_version());

  std::string command, input_path, output_path, replay_path, builtin, element;
  int trunc = 0, window = 0, genus = 0, builtin_param = 0;

  app.add_option("command", command,
                 "mc-check | hh | invariant-hh | twisted-hh | jacobian | exactness | "
                 "classify-cubic | normal-form | qh-split | semidirect-check")
      ->required();
  app.add_option("input", input_path, "problem file (optional for --builtin commands)");
  app.add_option("-o,--output", output_path, "report destination (default stdout)");
  app.add_option("--trunc", trunc, "override the truncation order");
  app.add_option("--window", window, "stabilisation window margin");
  app.add_option("--genus", genus, "genus for normal-form");
  app.add_option("--replay", replay_path, "replay the gauge log of a prior normal-form report");
  app.add_option("--builtin", builtin, "builtin algebra (qh_moduli_sigma2, qh_quadric, "
                                       "qh_intersection, clifford, exterior, pentagram)");
  app.add_option("--param", builtin_param, "builtin parameter (quadric dimension, genus, ...)");
  app.add_option("--element", element, "eigensplit element, e.g. \"h\"");

  CLI11_PARSE(app, argc, argv);

  auto slurp = [](const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
  };

  std::string input_text, replay_text;
  if (!input_path.empty() && !slurp(input_path, input_text)) {
    std::cerr << "error: cannot read " << input_path << "\n";
    return MCFORM_EINPUT;
  }
  if (!replay_path.empty() && !slurp(replay_path, replay_text)) {
    std::cerr << "error: cannot read " << replay_path << "\n";
    return MCFORM_EINPUT;
  }

  mcform_problem* problem = nullptr;
  if (!input_text.empty()) {
    char* errmsg = nullptr;
    int rc = mcform_problem_parse(input_text.c_str(), &problem, &errmsg);
    if (rc != MCFORM_OK) {
      std::cerr << "error: " << (errmsg ? errmsg : "bad problem file") << "\n";
      mcform_string_free(errmsg);
      return rc;
    }
  }

  mcform_options opts;
  mcform_options_init(&opts);
  opts.trunc = trunc;
  opts.window = window;
  opts.genus = genus;
  opts.builtin_param = builtin_param;
  if (!replay_text.empty()) opts.replay_json = replay_text.c_str();
  if (!builtin.empty()) opts.builtin = builtin.c_str();
  if (!element.empty()) opts.element = element.c_str();

  mcform_result* result = nullptr;
  int rc = mcform_run(command.c_str(), problem, &opts, &result);

  const char* report = mcform_result_report(result);
  if (output_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << output_path << "\n";
      rc = MCFORM_EINPUT;
    } else {
      out << report;
    }
  }
  const char* err = mcform_result_error(result);
  if (err && *err) std::cerr << "error: " << err << "\n";

  mcform_result_free(result);
  mcform_problem_free(problem);
  return rc;
}
