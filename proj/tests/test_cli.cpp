#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mg/finite_table.hpp"

#ifndef MG_CLI_PATH
#error "MG_CLI_PATH must point at the mg binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MG_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/mgcli_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("similar prints the paper radius") {
  const auto r = run_cli("similar --a cyclic:10 --b free:1 --max-radius 16");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "radius: 4"));
}

TEST_CASE("growth prints cumulative ball sizes") {
  const auto r = run_cli("growth --group free:2 --max-radius 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "1 5 17 53"));
}

TEST_CASE("check-sc reports the genus-2 ratio") {
  const std::string path =
      write_temp("genus2.gp",
                 "gens: a_1 b_1 a_2 b_2\nrel: a_1 b_1 a_1^-1 b_1^-1 a_2 b_2 a_2^-1 b_2^-1\n");
  const auto r = run_cli("check-sc --file " + path + " --lambda 1/6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "passed: yes"));
  CHECK(contains(r.output, "max ratio: 1/8"));
  std::remove(path.c_str());
}

TEST_CASE("wp prints a nontrivial verdict without claiming success via exit code") {
  const std::string path = write_temp("a5.gp", "gens: a\nrel: a^5\n");
  const auto r = run_cli("wp --file " + path + " --word \"a a a\"");
  CHECK(r.exit_code == 0);  // verdicts never drive exit codes
  CHECK(contains(r.output, "verdict: nontrivial"));

  const auto t = run_cli("wp --file " + path + " --word \"a^5\"");
  CHECK(t.exit_code == 0);
  CHECK(contains(t.output, "verdict: trivial"));
  std::remove(path.c_str());
}

TEST_CASE("wp rejects non-C'(1/6) presentations with exit 2 and a report") {
  const std::string path = write_temp("genus1.gp", "gens: a b\nrel: a b a^-1 b^-1\n");
  const auto r = run_cli("wp --file " + path + " --word \"a\"");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "1/4"));
  std::remove(path.c_str());
}

TEST_CASE("family emits a parseable presentation") {
  const auto r = run_cli("family --spec Wnk:2,30 --emit presentation");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("gens: u v\n", 0) == 0);
  // Below the Dehn threshold only the presentation comes back, with a note.
  const auto partial = run_cli("family --spec Wnk:1,5");
  CHECK(partial.exit_code == 0);
  CHECK(contains(partial.output, "presentation only"));
}

TEST_CASE("usage errors exit 1, computation errors exit 2") {
  CHECK(run_cli("similar --a free:1").exit_code == 1);
  CHECK(run_cli("bogus-subcommand").exit_code == 1);
  CHECK(run_cli("wp --file /does/not/exist.gp --word a").exit_code == 2);
  CHECK(run_cli("ball --group cyclic:0 --radius 1").exit_code == 2);
  CHECK(run_cli("ball --group free:2 --radius 9 --cap 100").exit_code == 2);
  CHECK(run_cli("up-check --group free:4 --p 3").exit_code == 2);
}

TEST_CASE("json envelopes re-parse, match human verdicts, and are byte-stable") {
  const auto once = run_cli("similar --a cyclic:10 --b free:1 --json");
  const auto twice = run_cli("similar --a cyclic:10 --b free:1 --json");
  CHECK(once.exit_code == 0);
  CHECK(once.output == twice.output);
  const auto doc = nlohmann::json::parse(once.output);
  CHECK(doc["command"] == "similar");
  CHECK(doc["inputs"]["a"] == "cyclic:10");
  CHECK(doc["result"]["radius"] == 4);
  CHECK(doc["result"]["arity_mismatch"] == false);
  CHECK(doc["warnings"].is_array());

  const auto human = run_cli("similar --a cyclic:10 --b free:1");
  CHECK(contains(human.output, "radius: 4"));
}

TEST_CASE("ball json export carries reps and transitions, signature omits reps") {
  const auto ball = run_cli("ball --group cyclic:6 --radius 2 --json");
  const auto doc = nlohmann::json::parse(ball.output);
  CHECK(doc["result"]["vertices"] == 5);
  CHECK(doc["result"]["reps"].size() == 5);
  CHECK(doc["result"]["transitions"].size() == 5);

  const auto sig = run_cli("signature --group cyclic:6 --radius 2 --json");
  const auto sig_doc = nlohmann::json::parse(sig.output);
  CHECK(!sig_doc["result"].contains("reps"));
  CHECK(sig_doc["result"]["vertices"] == 5);
}

TEST_CASE("modelcheck runs named formulas on table files") {
  const std::string path = write_temp("z3.json", mg::FiniteGroupTable::cyclic(3).to_json_text());
  const auto r = run_cli("modelcheck --table " + path + " --formula zeta");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "value: false"));

  const auto j = run_cli("modelcheck --table " + path + " --formula zeta --json");
  const auto doc = nlohmann::json::parse(j.output);
  CHECK(doc["result"]["value"] == false);
  std::remove(path.c_str());
}

TEST_CASE("modelcheck reads formula files in the prefix syntax") {
  const std::string table = write_temp("z4.json", mg::FiniteGroupTable::cyclic(4).to_json_text());
  const std::string formula =
      write_temp("involution.fml", "(exists a (and (not (= a e)) (= (* a a) e)))");
  const auto r = run_cli("modelcheck --table " + table + " --formula " + formula);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "value: true"));
  std::remove(table.c_str());
  std::remove(formula.c_str());
}

TEST_CASE("wp json trace re-parses and matches the verdict") {
  const std::string path = write_temp("a5b.gp", "gens: a\nrel: a^5\n");
  const auto r = run_cli("wp --file " + path + " --word a^5 --json");
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["result"]["trivial"] == true);
  CHECK(doc["result"]["steps"].size() == 1);
  CHECK(doc["result"]["final_word"] == "");
  std::remove(path.c_str());
}

TEST_CASE("dist prints the exact marked distance") {
  const auto r = run_cli("dist --a cyclic:6 --b cyclic:8");
  CHECK(contains(r.output, "distance: 1/4"));
  const auto far = run_cli("dist --a free:1 --b free:2");
  CHECK(contains(far.output, "distance: 2"));
}

TEST_CASE("chabauty, kernel, nielsen, inj-radius, pattern-sentence, up-check round trip") {
  CHECK(contains(run_cli("chabauty --group cyclic:2 --in a^2 --out a").output, "member: yes"));
  CHECK(contains(run_cli("chabauty --group free:1 --in a^2 --out a").output, "member: no"));
  CHECK(contains(run_cli("kernel --group cyclic:3 --max-len 3").output, "count: 2"));
  const auto nielsen = run_cli("nielsen --group cyclic:5 --moves invert:1 --max-radius 5");
  CHECK(contains(nielsen.output, "a = a^-1"));
  CHECK(contains(nielsen.output, "radius: 5"));
  CHECK(contains(run_cli("inj-radius --src free:1 --dst cyclic:5").output, "radius: 2"));
  CHECK(contains(run_cli("pattern-sentence --group cyclic:1 --radius 0").output,
                 "(exists x1 (= x1 e))"));
  CHECK(contains(run_cli("up-check --group Hp:3 --p 3").output, "member: yes"));
}

TEST_CASE("lh-check reads certificate files") {
  const std::string path = write_temp(
      "chain.json",
      R"({"stages": [{"group": "free:1", "delta": "1", "r": 2},
                     {"group": "cyclic:4", "delta": "1", "r": 1},
                     {"group": "cyclic:2", "delta": "1"}]})");
  const auto r = run_cli("lh-check --sequence " + path + " --max-radius 8");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "condition (ii) injectivity: FAILS"));
  CHECK(contains(r.output, "UNVERIFIED"));
  std::remove(path.c_str());
}
