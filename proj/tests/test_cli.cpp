#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CliRun {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  std::string cmd = std::string("'") + PREPER_CLI_PATH + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json payload_of(const CliRun& r) {
  auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc.contains("payload"));
  return doc["payload"];
}

}  // namespace

TEST_CASE("orbit subcommand classifies the flagship example") {
  CliRun r = run_cli("orbit 3/4 -29/16 --json");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["command"] == "orbit");
  CHECK(doc["status"] == "ok");
  auto p = doc["payload"];
  CHECK(p["kind"] == "preperiodic");
  CHECK(p["period_m"] == 3);
  CHECK(p["tail_n"] == 2);
  REQUIRE(p["orbit"].is_array());
  CHECK(p["orbit"].size() == 5);
  CHECK(p["orbit"][0] == "3/4");
  CHECK(p["orbit"][1] == "-5/4");
}

TEST_CASE("orbit text output is human-sized") {
  CliRun r = run_cli("orbit 0 -1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("preperiodic") != std::string::npos);
}

TEST_CASE("sz subcommand lists the seven values for 3/4") {
  CliRun r = run_cli("sz 3/4 --json");
  REQUIRE(r.exit_code == 0);
  auto p = payload_of(r);
  REQUIRE(p["values"].is_array());
  CHECK(p["values"].size() == 7);
  CHECK(p["values"][0] == "-45/16");
  CHECK(p["values"][6] == "3/16");
  CHECK(p["size"] == 7);
  CHECK(p["case"] == 4);
}

TEST_CASE("tz and intersect subcommands") {
  CliRun r = run_cli("tz 1/2 --json");
  REQUIRE(r.exit_code == 0);
  CHECK(payload_of(r)["values"].size() == 3);

  r = run_cli("intersect 3/4 5/4 --json");
  REQUIRE(r.exit_code == 0);
  CHECK(payload_of(r)["size"] == 6);

  r = run_cli("intersect 1/2 -1/2 --json");
  CHECK(r.exit_code == 2);  // same orbit pair is a usage-level rejection
}

TEST_CASE("count subcommand reports the F_3 point count") {
  CliRun r = run_cli("count --prime 3 --ext 1 --json");
  REQUIRE(r.exit_code == 0);
  auto p = payload_of(r);
  CHECK(p["N"] == 9);
  CHECK(p["p"] == 3);
  CHECK(p["k"] == 1);

  CliRun bad = run_cli("count --prime 4 --ext 1");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("NotPrime") != std::string::npos);
}

TEST_CASE("search subcommand finds the catalogued points") {
  CliRun r = run_cli("search C2 --height 10 --json");
  REQUIRE(r.exit_code == 0);
  auto p = payload_of(r);
  CHECK(p["count"] == 4);
  CHECK(p["matches_expected"] == true);

  CliRun bad = run_cli("search C7 --height 10");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("lpoly subcommand evaluates at one") {
  CliRun r = run_cli("lpoly --prime 3 --json");
  REQUIRE(r.exit_code == 0);
  CHECK(payload_of(r)["value_at_1"] == "504");
}

TEST_CASE("coeffs subcommand emits the leading Dirichlet coefficients") {
  CliRun r = run_cli("coeffs --max-n 10 --json");
  REQUIRE(r.exit_code == 0);
  auto arr = payload_of(r)["coefficients"];
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 10);
  CHECK(arr[0] == 1);   // a_1
  CHECK(arr[1] == -2);  // a_2
  CHECK(arr[2] == -5);  // a_3
  CHECK(arr[3] == 3);   // a_4
}

TEST_CASE("chabauty subcommand certifies saturation at 3") {
  CliRun r = run_cli("chabauty --prime 3 --json");
  REQUIRE(r.exit_code == 0);
  auto p = payload_of(r);
  CHECK(p["saturated"] == true);
  CHECK(p["count"] == 9);

  CliRun bad = run_cli("chabauty --prime 29");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("BadPrime") != std::string::npos);
}

TEST_CASE("singular subcommand counts nodes") {
  CliRun r = run_cli("singular --prime 23 --ext 1 --json");
  REQUIRE(r.exit_code == 0);
  CHECK(payload_of(r)["count"] == 1);

  r = run_cli("singular --prime 29 --ext 2 --json");
  REQUIRE(r.exit_code == 0);
  CHECK(payload_of(r)["count"] == 2);
}

TEST_CASE("conductor subcommand prints the ledger") {
  CliRun r = run_cli("conductor --json");
  REQUIRE(r.exit_code == 0);
  auto p = payload_of(r);
  CHECK(p["jacobian"] == 1237952);
  CHECK(p["elliptic"] == 58);
  CHECK(p["complement"] == 21344);
  CHECK(p["product_holds"] == true);
}

TEST_CASE("bad invocations exit with the usage code") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("orbit 3/4").exit_code == 2);      // missing t
  CHECK(run_cli("orbit 3/x 1").exit_code == 2);    // unparseable rational
  CHECK(run_cli("search C --height 0").exit_code == 2);
  CHECK(run_cli("count --prime 3 --ext 9").exit_code == 2);
}
