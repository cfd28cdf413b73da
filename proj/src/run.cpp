#include "mcform/run.hpp"

#include <set>
#include <sstream>

#include "mcform/fdalg.hpp"
#include "mcform/koszul.hpp"
#include "mcform/mcgauge.hpp"
#include "mcform/parse.hpp"

namespace mcform {

namespace {

ProblemFile load_problem(const std::string& text, const RunOptions& opts) {
  ProblemFile pf = parse_problem(text);
  if (opts.trunc > 0 && opts.trunc != pf.ctx->trunc_order()) {
    // re-parse under the overridden truncation so overflow diagnostics
    // refer to the actual working order
    std::string patched;
    std::istringstream is(text);
    std::string line;
    bool replaced = false;
    while (std::getline(is, line)) {
      auto first = line.find_first_not_of(" \t");
      if (!replaced && first != std::string::npos && line.compare(first, 5, "trunc") == 0) {
        patched += "trunc " + std::to_string(opts.trunc) + "\n";
        replaced = true;
      } else {
        patched += line + "\n";
      }
    }
    pf = parse_problem(patched);
    pf.source = text;
  }
  return pf;
}

const CyclicAction& require_group(const ProblemFile& pf) {
  if (!pf.group) fail(Errc::validation_error, "this command needs a 'group' line");
  return *pf.group;
}

HHOptions hh_options(const ProblemFile& pf, const RunOptions& opts) {
  HHOptions h;
  h.margin = opts.window;
  if (pf.group) h.sector = &*pf.group;
  return h;
}

Report hh_payload(const HHReport& r) {
  Report j;
  j["even"] = r.even;
  j["odd"] = r.odd;
  j["window"] = {{"even", r.even}, {"odd", r.odd},
                 {"even_prev", r.even_prev}, {"odd_prev", r.odd_prev},
                 {"margin", r.margin}, {"top_level", r.top_level}};
  j["stabilized"] = r.stabilized;
  j["square_zero"] = r.square_zero;
  if (!r.even_basis.empty()) j["even_basis"] = r.even_basis;
  return j;
}

struct CommandOutcome {
  Report payload;
  bool math_ok = true;
};

CommandOutcome cmd_mc_check(const ProblemFile& pf) {
  MCPair p(pf.w, pf.eta);
  MCVerdict v = mc_check(p);
  Report j;
  j["pass"] = v.pass();
  j["ww_zero"] = v.ww_zero;
  j["eta_eta_zero"] = v.eta_eta_zero;
  j["w_eta_zero"] = v.w_eta_zero;
  j["note"] = v.note;
  if (!v.pass()) j["failing_bracket"] = v.failure;
  return {j, v.pass()};
}

CommandOutcome cmd_hh(const ProblemFile& pf, const RunOptions& opts) {
  MCPair p(pf.w, pf.eta);
  MCVerdict v = mc_check(p);
  if (!v.pass()) {
    Report j;
    j["mc_check"] = false;
    j["failing_bracket"] = v.failure;
    return {j, false};
  }
  HHReport r = hh_ranks(p, hh_options(pf, opts));
  return {hh_payload(r), r.stabilized};
}

CommandOutcome cmd_invariant_hh(const ProblemFile& pf, const RunOptions& opts) {
  MCPair p(pf.w, pf.eta);
  HHReport r = invariant_hh(p, require_group(pf), hh_options(pf, opts));
  return {hh_payload(r), r.stabilized};
}

CommandOutcome cmd_twisted_hh(const ProblemFile& pf, const RunOptions& opts) {
  MCPair p(pf.w, pf.eta);
  TwistedReport r = twisted_sector_ranks(p, require_group(pf), hh_options(pf, opts));
  Report j;
  j["identity_sector"] = hh_payload(r.identity);
  j["twisted_sectors"] = r.twisted_sectors;
  j["twisted_rank_each"] = 1;
  j["twisted_parity"] = "odd";
  j["twisted_rule"] = "rule-based: Koszul resolution of the trivial module, valid for Fix(gamma) = {0}";
  j["total_even"] = r.total_even;
  j["total_odd"] = r.total_odd;
  return {j, r.identity.stabilized};
}

CommandOutcome cmd_jacobian(const ProblemFile& pf, const RunOptions&) {
  JacobianReport r = jacobian_ring(pf.w);
  Report j;
  j["dims"] = r.cumulative;
  j["stabilized"] = r.stabilized;
  if (r.stabilized) j["total"] = r.total;
  Report basis = Report::array();
  for (const Monomial& m : r.basis) basis.push_back(m.str(pf.ctx->names()));
  j["basis"] = std::move(basis);
  return {j, r.stabilized};
}

CommandOutcome cmd_exactness(const ProblemFile& pf, const RunOptions& opts) {
  HHOptions h;
  h.margin = opts.window;
  ExactnessReport r = koszul_exactness(pf.w, h);
  Report j;
  j["exact"] = r.exact;
  j["stabilized"] = r.stabilized;
  j["h3"] = r.h3;
  j["h2"] = r.h2;
  if (!r.exact) {
    j["failing_form_degree"] = r.failing_form_degree;
    j["witness"] = r.witness;
    j["witness_degree"] = r.witness_degree;
  }
  return {j, r.exact && r.stabilized};
}

CommandOutcome cmd_classify_cubic(const ProblemFile& pf) {
  CubicClass c = classify_cubic(pf.w, require_group(pf));
  Report j;
  switch (c.type) {
    case CubicClass::Type::type_a: j["type"] = "A"; j["lambda"] = c.lambda.str(); break;
    case CubicClass::Type::type_b: j["type"] = "B"; j["lambda"] = c.lambda.str(); break;
    case CubicClass::Type::other: j["type"] = "other"; break;
  }
  j["cubic"] = c.cubic_part.str();
  j["invariant"] = require_group(pf).is_invariant(pf.w);
  if (c.to_type_a) {
    Report rows = Report::array();
    for (const auto& row : *c.to_type_a) {
      Report jr = Report::array();
      for (const auto& s : row) jr.push_back(s.str());
      rows.push_back(std::move(jr));
    }
    j["to_type_a"] = std::move(rows);
  }
  return {j, true};
}

CommandOutcome cmd_normal_form(const ProblemFile& pf, const RunOptions& opts) {
  const CyclicAction& a = require_group(pf);
  int genus = opts.genus;
  if (genus == 0) {
    if (a.order() % 2 == 0 || a.order() < 5)
      fail(Errc::validation_error, "cannot infer genus from group order " +
                                       std::to_string(a.order()));
    genus = (a.order() - 1) / 2;
  }
  if (!opts.replay_json.empty()) {
    Report prior = Report::parse(opts.replay_json);
    std::vector<GaugeStep> log;
    for (const auto& s : prior.at("gauge_log"))
      log.push_back(GaugeStep::from_report(s, pf.ctx));
    MCPair replayed = replay_gauge_log(MCPair(pf.w), log);
    Report j;
    j["replayed_output"] = replayed.w.str();
    std::string expected = prior.at("output").get<std::string>();
    j["expected_output"] = expected;
    bool match = replayed.w.str() == expected;
    j["match"] = match;
    return {j, match};
  }
  NormalFormReport r = normal_form(pf.w, a, genus);
  return {normal_form_to_report(r), r.residual_zero};
}

FiniteDimAlgebra algebra_from(const ProblemFile* pf, const RunOptions& opts) {
  if (!opts.builtin.empty())
    return FiniteDimAlgebra::builtin(opts.builtin, opts.builtin_param);
  if (pf && pf->ring) return FiniteDimAlgebra::from_presentation(*pf->ring);
  fail(Errc::validation_error, "qh-split needs --builtin or a ring block");
}

CommandOutcome cmd_qh_split(const ProblemFile* pf, const RunOptions& opts) {
  FiniteDimAlgebra alg = algebra_from(pf, opts);
  Elem elem = alg.zero();
  if (!opts.element.empty()) {
    elem = alg.parse_element(opts.element);
  } else if (alg.split_element()) {
    elem = *alg.split_element();
  } else if (pf && pf->ring && !pf->ring->c1.empty()) {
    for (const auto& [c, label] : pf->ring->c1) {
      int idx = alg.label_index(label);
      if (idx < 0) fail(Errc::validation_error, "c1 uses unknown label '" + label + "'");
      elem[idx] += c;
    }
  } else {
    fail(Errc::validation_error, "no splitting element: pass --element or declare ring c1");
  }
  EigenSplit split = eigen_split(alg, elem);
  Report j;
  j["dimension"] = alg.dimension();
  j["element"] = alg.element_str(elem);
  j["minimal_polynomial"] = split.minpoly.str();
  Report blocks = Report::array();
  for (const auto& b : split.blocks) {
    Report bj;
    if (b.eigenvalue) bj["eigenvalue"] = b.eigenvalue->str();
    else bj["factor"] = b.factor.str();
    bj["multiplicity"] = b.multiplicity;
    bj["dimension"] = b.dimension;
    bj["idempotent"] = alg.element_str(b.idempotent);
    Report basis = Report::array();
    for (const auto& v : b.space_basis) basis.push_back(alg.element_str(v));
    bj["basis"] = std::move(basis);
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  j["zero_rank"] = zero_eigenspace_rank(alg, elem);
  return {j, true};
}

CommandOutcome cmd_semidirect_check(const ProblemFile* pf, const RunOptions& opts) {
  int num_vars;
  CyclicAction action = CyclicAction::trivial(1);
  if (!opts.builtin.empty()) {
    // builtin "genus" semidirect: pentagram algebra at the given genus
    if (opts.builtin != "pentagram")
      fail(Errc::bad_params, "semidirect-check supports --builtin pentagram");
    action = CyclicAction::genus(opts.builtin_param);
    num_vars = 3;
  } else if (pf) {
    action = require_group(*pf);
    num_vars = pf->ctx->num_vars();
  } else {
    fail(Errc::validation_error, "semidirect-check needs a problem file or --builtin");
  }
  SemidirectAlgebra s(num_vars, action);
  auto failure = s.associativity_failure();
  Report j;
  j["dimension"] = s.dimension();
  j["order"] = action.order();
  j["associative"] = failure.empty();
  j["unit"] = s.basis_label(s.unit_index());
  if (!failure.empty()) {
    j["failing_triple"] = {s.basis_label(failure[0]), s.basis_label(failure[1]),
                           s.basis_label(failure[2])};
  }
  Field f = pf ? pf->ctx->field() : Field::Q;
  j["scalar_realisable"] = s.realisable_over(f);
  if (s.realisable_over(f)) {
    FiniteDimAlgebra alg = semidirect_to_algebra(s, f);
    j["scalar_algebra_dimension"] = alg.dimension();
  }
  return {j, failure.empty()};
}

}  // namespace

RunResult run_command(const std::string& command, const std::string& problem_text,
                      const RunOptions& opts) {
  static const std::set<std::string> commands = {
      "mc-check", "hh", "invariant-hh", "twisted-hh", "jacobian",
      "exactness", "classify-cubic", "normal-form", "qh-split", "semidirect-check"};
  RunResult out;
  Report& rep = out.report;
  rep["command"] = command;
  if (!commands.count(command)) {
    rep["error"] = "unknown command '" + command + "'";
    out.exit_code = 2;
    return out;
  }
  try {
    std::optional<ProblemFile> pf;
    if (!problem_text.empty()) {
      pf = load_problem(problem_text, opts);
      rep["input_digest"] = input_digest(problem_text);
      rep["trunc"] = pf->ctx->trunc_order();
    }
    auto need = [&]() -> const ProblemFile& {
      if (!pf) fail(Errc::validation_error, "this command needs a problem file");
      return *pf;
    };
    CommandOutcome oc;
    if (command == "mc-check") oc = cmd_mc_check(need());
    else if (command == "hh") oc = cmd_hh(need(), opts);
    else if (command == "invariant-hh") oc = cmd_invariant_hh(need(), opts);
    else if (command == "twisted-hh") oc = cmd_twisted_hh(need(), opts);
    else if (command == "jacobian") oc = cmd_jacobian(need(), opts);
    else if (command == "exactness") oc = cmd_exactness(need(), opts);
    else if (command == "classify-cubic") oc = cmd_classify_cubic(need());
    else if (command == "normal-form") oc = cmd_normal_form(need(), opts);
    else if (command == "qh-split") oc = cmd_qh_split(pf ? &*pf : nullptr, opts);
    else oc = cmd_semidirect_check(pf ? &*pf : nullptr, opts);
    rep["result"] = std::move(oc.payload);
    out.exit_code = oc.math_ok ? 0 : 1;
  } catch (const Error& e) {
    rep["error"] = e.what();
    rep["error_kind"] = errc_name(e.code());
    out.exit_code = errc_is_math(e.code()) ? 1 : 2;
  } catch (const nlohmann::json::exception& e) {
    rep["error"] = std::string("bad replay document: ") + e.what();
    rep["error_kind"] = "SyntaxError";
    out.exit_code = 2;
  }
  return out;
}

}  // namespace mcform
