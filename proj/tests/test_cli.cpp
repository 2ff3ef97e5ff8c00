#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

namespace {

struct RunOutput {
  int exit_code = -1;
  std::string out;
};

RunOutput run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      (env.empty() ? "" : env + " ") + CROSSINT_CLI_PATH + " " + args +
      " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunOutput result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
    result.out.append(buf, got);
  const int rc = pclose(pipe);
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("bound command: values and precondition exit code") {
  const RunOutput hm = run_cli("bound --theorem hm -n 5 -k 2");
  CHECK(hm.exit_code == 0);
  CHECK(contains(hm.out, "hm = 8"));

  const RunOutput main_rep =
      run_cli("bound --theorem main -n 6 -k 2 -l 3 -r 2 -c 1");
  CHECK(main_rep.exit_code == 0);
  CHECK(contains(main_rep.out, "max 15"));
  CHECK(contains(main_rep.out, "(ii)"));

  const RunOutput invalid =
      run_cli("bound --theorem main -n 3 -k 2 -l 2 -r 1 -c 1");
  CHECK(invalid.exit_code == 1);

  const RunOutput wz = run_cli("bound --theorem wz -n 6 -k 3 -l 2 -q 1");
  CHECK(wz.exit_code == 1);

  const RunOutput usage = run_cli("bound --theorem nonsense -n 4 -k 2");
  CHECK(usage.exit_code == 1);
}

TEST_CASE("verify main: ok run, both engines") {
  const RunOutput ok =
      run_cli("verify main -n 4 -k 2 -l 2 -r 2 -c 1 --mode both");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.out, "matched"));
  CHECK(contains(ok.out, "engines agree: yes"));
}

TEST_CASE("verify main: restricted window reports a mismatch, exit 2") {
  const RunOutput miss =
      run_cli("verify main -n 5 -k 2 -l 3 -r 2 -c 2 --window 3..3");
  CHECK(miss.exit_code == 2);
  CHECK(contains(miss.out, "MISMATCH"));
}

TEST_CASE("budget exits: flag, env var, and oversized instances") {
  const RunOutput big = run_cli("verify main -n 9 -k 2 -l 2 -r 1 -c 1");
  CHECK(big.exit_code == 3);
  CHECK(contains(big.out, "budget"));

  const RunOutput flagged =
      run_cli("verify main -n 6 -k 2 -l 3 -r 2 -c 1 --budget 10");
  CHECK(flagged.exit_code == 3);

  const RunOutput env_budget = run_cli(
      "verify main -n 6 -k 2 -l 3 -r 2 -c 1", "CROSSINT_BUDGET=10");
  CHECK(env_budget.exit_code == 3);

  // The explicit flag overrides the environment.
  const RunOutput override_env = run_cli(
      "verify main -n 5 -k 2 -l 2 -r 1 -c 1 --budget 2000000",
      "CROSSINT_BUDGET=10");
  CHECK(override_env.exit_code == 0);

  const RunOutput prop = run_cli("verify prop-fm -n 7 -k 2 -l 3 -r 1");
  CHECK(prop.exit_code == 3);
}

TEST_CASE("json output: run config echo and byte-identical reruns") {
  const std::string cmd =
      "verify main -n 4 -k 2 -l 2 -r 1 -c 1 --format json --no-timestamp";
  const RunOutput a = run_cli(cmd);
  const RunOutput b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const nlohmann::json doc = nlohmann::json::parse(a.out);
  CHECK(doc["run"]["command"] == "verify main");
  CHECK(doc["run"]["parameters"]["n"] == 4);
  CHECK(doc["run"]["parameters"]["c"] == "1");
  CHECK(doc["result"]["ok"] == true);
  CHECK(doc["result"]["matched"] == true);
  CHECK_FALSE(doc.contains("timestamp"));

  const RunOutput stamped = run_cli(
      "verify main -n 4 -k 2 -l 2 -r 1 -c 1 --format json");
  const nlohmann::json stamped_doc = nlohmann::json::parse(stamped.out);
  CHECK(stamped_doc.contains("timestamp"));
}

TEST_CASE("witness files replay through classify") {
  const std::string witness = "/tmp/crossint_cli_witness.txt";
  std::remove(witness.c_str());
  const RunOutput produce = run_cli(
      "verify main -n 5 -k 2 -l 3 -r 2 -c 1/2 --witness-out " + witness);
  CHECK(produce.exit_code == 0);

  std::ifstream in(witness);
  REQUIRE(in.good());

  const RunOutput replay = run_cli(
      "verify classify -n 5 -k 2 -l 3 -r 2 -c 1/2 --in " + witness);
  CHECK(replay.exit_code == 0);
  CHECK(contains(replay.out, "case (iii)"));

  const RunOutput missing = run_cli(
      "verify classify -n 5 -k 2 -l 3 -r 2 -c 1/2 --in /tmp/nonexistent.txt");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("sweep emits one CSV row per instance") {
  const RunOutput csv = run_cli(
      "verify main -k 2 -l 2 -r 1 -c 1 --sweep n=4..6 --format csv");
  CHECK(csv.exit_code == 0);
  int lines = 0;
  for (char ch : csv.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 4);  // header + 3 rows
  CHECK(contains(csv.out, "n,k,l,r,c,observed,bound,matched"));
  CHECK(contains(csv.out, "4,2,2,1,1,6,6,true"));
  CHECK(contains(csv.out, "6,2,2,1,1,10,10,true"));

  // Sweeping an unknown parameter is a usage error.
  const RunOutput bad = run_cli(
      "verify main -n 4 -k 2 -l 2 -r 1 -c 1 --sweep z=1..3");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("explore subcommands") {
  const RunOutput alt = run_cli(
      "explore problem3 -n 7 -t 2 --sizes 3,3 -q 2 --restarts 20 --seed 7");
  CHECK(alt.exit_code == 0);
  CHECK(contains(alt.out, "consistent"));
  CHECK(contains(alt.out, "best 14"));

  const RunOutput ex = run_cli("explore problem1 -n 5 --sizes 2,2");
  CHECK(ex.exit_code == 0);
  CHECK(contains(ex.out, "nested"));
  CHECK(contains(ex.out, "best 8"));

  const RunOutput cons = run_cli(
      "explore problem3 -n 7 --sizes 3,3 -q 2 --constructions");
  CHECK(cons.exit_code == 0);
  CHECK(contains(cons.out, "r-branch 14"));
  CHECK(contains(cons.out, "1-branch 10"));

  const RunOutput tiny_budget = run_cli(
      "explore problem1 -n 6 --sizes 2,2,1 --budget 5");
  CHECK(tiny_budget.exit_code == 3);
  CHECK(contains(tiny_budget.out, "budget_exhausted"));

  // Predictable refusal (nested scan cost is known up front).
  const RunOutput refused = run_cli(
      "explore problem1 -n 6 --sizes 2,2,2 --budget 5");
  CHECK(refused.exit_code == 3);
}

TEST_CASE("lex, shadow, and family utilities") {
  const RunOutput rank = run_cli("lex rank -n 5 -k 3 --set 1,3,5");
  CHECK(rank.exit_code == 0);
  CHECK(contains(rank.out, "rank 4"));

  const RunOutput unrank = run_cli("lex unrank -n 5 -k 3 --rank 4");
  CHECK(unrank.exit_code == 0);
  CHECK(contains(unrank.out, "{1,3,5}"));

  const std::string fam_file = "/tmp/crossint_cli_family.txt";
  const RunOutput linitial = run_cli(
      "family linitial -n 5 -k 3 -m 4 --output " + fam_file);
  CHECK(linitial.exit_code == 0);

  const RunOutput shadow = run_cli("shadow -j 2 --in " + fam_file);
  CHECK(shadow.exit_code == 0);
  CHECK(contains(shadow.out, "|D_2| = 4"));

  const RunOutput partner = run_cli(
      "family partner --in " + fam_file + " -k 2");
  CHECK(partner.exit_code == 0);
  CHECK(contains(partner.out, "family n=5 k=2"));

  const RunOutput compress_cmd = run_cli("family compress --in " + fam_file);
  CHECK(compress_cmd.exit_code == 0);
  CHECK(contains(compress_cmd.out, "size=4"));

  const RunOutput p = run_cli("family p -n 6 -l 3 -i 2");
  CHECK(p.exit_code == 0);
  CHECK(contains(p.out, "size=4"));

  const RunOutput r = run_cli("family r -n 5 -k 2 -i 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "size=7"));
}

TEST_CASE("unknown flags and subcommands exit 1") {
  CHECK(run_cli("verify main -n 4 -k 2 -l 2 -r 1 -c 1 --bogus").exit_code ==
        1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}
