#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcform/run.hpp"

using namespace mcform;

namespace {

const char* kGenus2 =
    "# genus 2 pentagram problem\n"
    "vars v1 v2 v3\n"
    "field Q\n"
    "trunc 12\n"
    "group cyclic 5 weights 1 1 3\n"
    "W = -1*v1*v2*v3 + v1^5 + v2^5 + v3^5\n"
    "eta = 0\n";

const char* kNoisy =
    "vars v1 v2 v3\n"
    "field Q\n"
    "trunc 13\n"
    "group cyclic 5 weights 1 1 3\n"
    "W = 2*v1*v2*v3 + v1^5 + v2^5 + 3*v3^5 + v1^3*v3^4 - 1/2*v1^2*v2*v3^4\n";

const char* kBadPair =
    "vars v1 v2 v3\n"
    "trunc 10\n"
    "W = v1^3\n"
    "eta = (v1^3)*e{1,2} + (v1^2*v2)*e{1,3}\n";

}  // namespace

TEST_CASE("mc-check on a valid and an invalid pair") {
  RunResult ok = run_command("mc-check", kGenus2, {});
  CHECK(ok.exit_code == 0);
  CHECK(ok.report["result"]["pass"] == true);

  RunResult bad = run_command("mc-check", kBadPair, {});
  CHECK(bad.exit_code == 1);
  CHECK(bad.report["result"]["pass"] == false);
  CHECK(bad.report["result"]["failing_bracket"] == "[eta,eta]");
}

TEST_CASE("hh exits 1 naming the bracket when mc_check fails") {
  RunResult r = run_command("hh", kBadPair, {});
  CHECK(r.exit_code == 1);
  CHECK(r.report["result"]["mc_check"] == false);
  CHECK(r.report["result"]["failing_bracket"] == "[eta,eta]");
}

TEST_CASE("invariant-hh of the genus-2 problem") {
  RunResult r = run_command("invariant-hh", kGenus2, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["even"] == 2);
  CHECK(r.report["result"]["odd"] == 0);
  CHECK(r.report["result"]["stabilized"] == true);
  CHECK(r.report["result"]["even_basis"][0] == "1");
  CHECK(r.report["result"]["even_basis"][1] == "v1*v2*v3");
}

TEST_CASE("twisted-hh totals") {
  RunResult r = run_command("twisted-hh", kGenus2, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["total_even"] == 2);
  CHECK(r.report["result"]["total_odd"] == 4);
}

TEST_CASE("jacobian and exactness") {
  RunResult j = run_command("jacobian", kGenus2, {});
  CHECK(j.exit_code == 0);
  CHECK(j.report["result"]["stabilized"] == true);

  RunResult e = run_command("exactness", kGenus2, {});
  CHECK(e.exit_code == 0);
  CHECK(e.report["result"]["exact"] == true);

  RunResult f = run_command("exactness",
                            "vars v1 v2 v3\ntrunc 12\nW = v1^2*v2^2\n", {});
  CHECK(f.exit_code == 1);
  CHECK(f.report["result"]["exact"] == false);
  CHECK(f.report["result"].contains("witness"));
}

TEST_CASE("classify-cubic") {
  RunResult r = run_command("classify-cubic", kGenus2, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["type"] == "A");
  CHECK(r.report["result"]["lambda"] == "-1");
}

TEST_CASE("normal-form and replay") {
  RunResult r = run_command("normal-form", kNoisy, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["residual_zero"] == true);
  CHECK(r.report["result"]["lambda"] == "2");
  // replay the emitted log against the same input
  RunOptions replay;
  replay.replay_json = r.report["result"].dump();
  RunResult rr = run_command("normal-form", kNoisy, replay);
  CHECK(rr.exit_code == 0);
  CHECK(rr.report["result"]["match"] == true);
}

TEST_CASE("qh-split on the builtin moduli algebra") {
  RunOptions opts;
  opts.builtin = "qh_moduli_sigma2";
  RunResult r = run_command("qh-split", "", opts);
  CHECK(r.exit_code == 0);
  const auto& blocks = r.report["result"]["blocks"];
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0]["eigenvalue"] == "-4");
  CHECK(blocks[0]["dimension"] == 1);
  CHECK(blocks[1]["eigenvalue"] == "0");
  CHECK(blocks[1]["dimension"] == 6);
  CHECK(blocks[2]["eigenvalue"] == "4");
  CHECK(blocks[2]["dimension"] == 1);
}

TEST_CASE("qh-split from a ring block in a problem file") {
  std::string text =
      "vars v1\n"
      "trunc 2\n"
      "ring basis 1 t\n"
      "ring degrees 0 0\n"
      "ring rule t*t = 1\n"
      "ring c1 = t\n";
  RunResult r = run_command("qh-split", text, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["dimension"] == 2);
  const auto& blocks = r.report["result"]["blocks"];
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0]["eigenvalue"] == "-1");
  CHECK(blocks[1]["eigenvalue"] == "1");
}

TEST_CASE("semidirect-check") {
  RunResult r = run_command("semidirect-check", kGenus2, {});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["dimension"] == 40);
  CHECK(r.report["result"]["associative"] == true);

  RunOptions opts;
  opts.builtin = "pentagram";
  opts.builtin_param = 3;
  RunResult b = run_command("semidirect-check", "", opts);
  CHECK(b.exit_code == 0);
  CHECK(b.report["result"]["dimension"] == 56);  // 7 * 8
}

TEST_CASE("exit taxonomy: input errors are code 2") {
  RunResult r = run_command("hh", "vars v1\nW = v1\n", {});  // missing trunc
  CHECK(r.exit_code == 2);
  CHECK(r.report.contains("error"));
  RunResult u = run_command("not-a-command", "", {});
  CHECK(u.exit_code == 2);
}

TEST_CASE("determinism: identical input bytes give identical report bytes") {
  for (const char* cmd : {"mc-check", "invariant-hh", "jacobian", "normal-form"}) {
    RunResult a = run_command(cmd, cmd == std::string("normal-form") ? kNoisy : kGenus2, {});
    RunResult b = run_command(cmd, cmd == std::string("normal-form") ? kNoisy : kGenus2, {});
    CHECK(canonical_dump(a.report) == canonical_dump(b.report));
  }
}

TEST_CASE("trunc override re-parses the problem") {
  RunOptions opts;
  opts.trunc = 14;
  RunResult r = run_command("jacobian", kGenus2, opts);
  CHECK(r.exit_code == 0);
  CHECK(r.report["trunc"] == 14);
  CHECK(r.report["result"]["dims"].size() == 15);
}
