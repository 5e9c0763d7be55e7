#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "rlab/cli.hpp"

using rlab::cli_operations;
using rlab::cli_run;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::string text;
  const int rc = cli_run(args, text);
  if (out) *out = text;
  return rc;
}

// small, fast parameters used when walking every (subcommand, op) pair
const std::map<std::string, std::vector<std::string>> kSmallArgs = {
    {"address", {"--n", "3", "--k", "1", "--trials", "3"}},
    {"codes", {"--n", "3", "--k", "2", "--trials", "20"}},
    {"transfer", {"--n", "3", "--k", "1", "--trials", "2"}},
    {"graphs", {"--n", "400", "--k", "1", "--d", "3", "--trials", "10"}},
    {"rounds", {"--n", "5", "--k", "2", "--d", "2"}},
    {"comm", {"--n", "11", "--k", "2", "--trials", "10"}},
    {"suite", {"--k", "2"}},
};

}  // namespace

TEST_CASE("usage problems exit with code 2") {
  std::string out;
  CHECK(run({}, &out) == 2);
  CHECK(run({"frobnicate"}, &out) == 2);
  CHECK(run({"address", "--bogus"}, &out) == 2);
  CHECK(run({"address", "frobnicate"}, &out) == 2);
  CHECK(run({"address", "run", "--n", "4"}, &out) == 2);  // not prime
  CHECK(out.find("usage error") != std::string::npos);
  CHECK(run({"codes", "blr", "--eps", "1.5"}, &out) == 2);
  CHECK(run({"transfer", "params", "--eps", "0.9"}, &out) == 2);  // above code distance
  CHECK(run({"graphs", "gap", "--d", "1"}, &out) == 2);
  CHECK(run({"rounds", "contract", "--k", "1"}, &out) == 2);
  CHECK(run({"comm", "compile", "--n", "9"}, &out) == 2);   // not prime
  CHECK(run({"comm", "parity", "--n", "65"}, &out) == 2);   // universe too wide
  CHECK(run({"suite", "--k", "12"}, &out) == 2);
}

TEST_CASE("help exits 0 and prints usage text") {
  std::string out;
  CHECK(run({"--help"}, &out) == 0);
  CHECK(out.find("Usage") != std::string::npos);
  CHECK(out.find("address") != std::string::npos);
  CHECK(run({"graphs", "--help"}, &out) == 0);
  CHECK(out.find("--eps") != std::string::npos);
}

TEST_CASE("runtime failures exit with code 1") {
  std::string out;
  // budget override tighter than the strategy's declared rounds
  CHECK(run({"transfer", "verify", "--rounds-budget", "0", "--trials", "1"}, &out) == 1);
  CHECK(out.find("error") != std::string::npos);
  // query budget too small for the opening batch
  CHECK(run({"address", "run", "--k", "2", "--query-budget", "1", "--trials", "1"}, &out) == 1);
}

TEST_CASE("every advertised operation of every subcommand runs clean") {
  const auto table = cli_operations();
  REQUIRE(table.size() == 7);
  for (const auto& [sub, op_names] : table) {
    REQUIRE(kSmallArgs.count(sub) == 1);
    CHECK(!op_names.empty());
    for (const auto& op : op_names) {
      std::vector<std::string> args{sub, op};
      const auto& extra = kSmallArgs.at(sub);
      args.insert(args.end(), extra.begin(), extra.end());
      std::string out;
      const int rc = run(args, &out);
      INFO(sub, " ", op, " rc=", rc, " out=", out);
      CHECK(rc == 0);
      CHECK(!out.empty());
    }
  }
}

TEST_CASE("same configuration and seed yields byte-identical output") {
  const std::vector<std::vector<std::string>> cases = {
      {"address", "run", "--n", "3", "--trials", "5", "--seed", "99"},
      {"graphs", "run", "--n", "50", "--k", "1", "--seed", "99"},
      {"rounds", "random", "--n", "5", "--k", "2", "--d", "2", "--seed", "99"},
      {"codes", "decode", "--n", "3", "--k", "2", "--trials", "30", "--seed", "99"},
  };
  for (const auto& args : cases) {
    std::string first;
    std::string second;
    CHECK(run(args, &first) == 0);
    CHECK(run(args, &second) == 0);
    INFO(args.front(), " ", args[1]);
    CHECK(first == second);
    CHECK(!first.empty());
  }
  // a different seed must change a record-producing stream
  std::string a;
  std::string b;
  CHECK(run({"address", "run", "--n", "3", "--trials", "5", "--seed", "99"}, &a) == 0);
  CHECK(run({"address", "run", "--n", "3", "--trials", "5", "--seed", "100"}, &b) == 0);
  CHECK(a != b);
}

TEST_CASE("seed falls back to the RLAB_SEED environment variable") {
  std::string flagged;
  CHECK(run({"address", "run", "--n", "3", "--trials", "4", "--seed", "4242"}, &flagged) == 0);

  setenv("RLAB_SEED", "4242", 1);
  std::string from_env;
  CHECK(run({"address", "run", "--n", "3", "--trials", "4"}, &from_env) == 0);
  unsetenv("RLAB_SEED");

  CHECK(flagged == from_env);

  std::string default_seed;
  CHECK(run({"address", "run", "--n", "3", "--trials", "4"}, &default_seed) == 0);
  CHECK(default_seed != from_env);
}

TEST_CASE("record streams start with a parseable header line") {
  std::string out;
  REQUIRE(run({"address", "run", "--n", "3", "--trials", "2"}, &out) == 0);
  CHECK(out.rfind("{\"config\":", 0) == 0);
  CHECK(out.find("\"format\":\"rlab-records\"") != std::string::npos);
  CHECK(out.find("\"kind\":\"address-run\"") != std::string::npos);
  // one header + trials records + summary
  const std::size_t lines = std::count(out.begin(), out.end(), '\n');
  CHECK(lines == 4);
}

TEST_CASE("verification style operations report failure through exit codes") {
  std::string out;
  CHECK(run({"address", "sweep", "--n", "3", "--k", "2"}, &out) == 0);
  CHECK(out.find("mismatches") != std::string::npos);
  CHECK(run({"transfer", "verify", "--n", "3", "--k", "1", "--trials", "9"}, &out) == 0);
  CHECK(run({"comm", "compile", "--n", "23", "--k", "3", "--trials", "25"}, &out) == 0);
}
