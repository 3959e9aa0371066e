#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "serialize.hpp"

#ifndef CLI_PATH
#error "CLI_PATH must point at the command-line binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch_file(const std::string& tag) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         ("cli_test_" + std::to_string(::getpid()) + "_" + tag + "_" + std::to_string(counter++));
}

// Runs the binary through the shell; `env_prefix` may hold VAR=value assignments.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::filesystem::path out_path = scratch_file("out");
  const std::filesystem::path err_path = scratch_file("err");
  std::string cmd = env_prefix.empty() ? "" : env_prefix + " ";
  cmd += std::string("'") + CLI_PATH + "' " + args + " > '" + out_path.string() + "' 2> '" +
         err_path.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace

TEST_CASE("sequence generation output is byte-stable") {
  const RunResult r = run_cli("gen-b --family thm11 --b1 11 --n 5 --format json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "{\"b\":[11,38,116,500,1964]}\n");
  const RunResult again = run_cli("gen-b --family thm11 --b1 11 --n 5 --format json");
  REQUIRE(again.out == r.out);

  const RunResult text = run_cli("gen-b --family ap --b1 4 --d 6 --n 4");
  REQUIRE(text.code == 0);
  REQUIRE(text.out == "4 10 16 22\n");

  const RunResult csv = run_cli("gen-b --family ap --b1 4 --d 6 --n 4 --format csv");
  REQUIRE(csv.code == 0);
  REQUIRE(csv.out == "b\n4\n10\n16\n22\n");
}

TEST_CASE("sequence generation rejects bad parameters") {
  const RunResult r = run_cli("gen-b --family thm11 --b1 10 --n 4");
  REQUIRE(r.code == 2);
  REQUIRE(r.err.find("error:") != std::string::npos);
  REQUIRE(run_cli("gen-b --family ap --b1 4 --n 4").code == 2);     // missing --d
  REQUIRE(run_cli("gen-b --family ap --b1 4 --d 11 --n 4").code == 2);
}

TEST_CASE("large terms overflow without bigint and print with it") {
  REQUIRE(run_cli("gen-b --family thm11 --b1 11 --n 40").code == 3);
  const RunResult big = run_cli("gen-b --family thm11 --b1 11 --n 40 --bigint --format json");
  REQUIRE(big.code == 0);
  const json j = json::parse(big.out);
  REQUIRE(j.at("b").size() == 40);
  REQUIRE(j.at("b").back().get<std::string>() == "2327182202758161161309396");
  REQUIRE(j.at("b").front().get<std::string>() == "11");
}

TEST_CASE("construction with verification exits cleanly") {
  const RunResult r = run_cli("build --thm 1.1 --b1 11 --kmax 5 --verify");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("family") == "thm11");
  REQUIRE(j.at("b1") == 11);
  REQUIRE(j.at("stages").size() == 3);
  REQUIRE(j.at("all_verified") == true);
  const json& s3 = j.at("stages").at(0);
  REQUIRE(s3.at("k") == 3);
  REQUIRE(s3.at("added") == json::array({1, 2, 3, 4, 12, 13, 14, 49, 56}));
  REQUIRE(s3.at("span") == 154);
  REQUIRE(s3.at("verified") == true);
  REQUIRE(s3.at("mismatches").empty());

  const RunResult ap = run_cli("build --thm 1.3 --b1 4 --d 6 --kmax 4 --verify");
  REQUIRE(ap.code == 0);
  const json k = json::parse(ap.out);
  REQUIRE(k.at("family") == "ap");
  REQUIRE(k.at("d") == 6);
  REQUIRE(k.at("stages").size() == 3);
  REQUIRE(k.at("all_verified") == true);
}

TEST_CASE("construction overflow reports the stages that did fit") {
  const RunResult r = run_cli("build --thm 1.1 --b1 11 --kmax 40");
  REQUIRE(r.code == 3);
  const json j = json::parse(r.out);
  REQUIRE(j.at("stages").size() >= 20);
  REQUIRE_FALSE(j.at("stages").back().contains("verified"));  // --verify not given
}

TEST_CASE("construction parameter errors") {
  REQUIRE(run_cli("build --thm 1.1 --b1 11 --kmax 2").code == 2);
  REQUIRE(run_cli("build --thm 1.1 --b1 10 --kmax 4").code == 2);
  REQUIRE(run_cli("build --thm 1.3 --b1 4 --kmax 3").code == 2);  // missing --d
  REQUIRE(run_cli("build --thm 1.4 --b1 4 --kmax 3").code == 2);  // no such family
}

TEST_CASE("window budget stops verification with a resource exit") {
  const RunResult r = run_cli("build --thm 1.1 --b1 11 --kmax 4 --verify --mem-budget 100");
  REQUIRE(r.code == 4);
  const json j = json::parse(r.out);
  REQUIRE(j.at("all_verified") == false);
  REQUIRE(j.at("stages").at(0).at("verified") == false);
  REQUIRE(j.at("stages").at(0).contains("note"));
}

TEST_CASE("environment variable sets the window budget, flags override it") {
  const RunResult from_env =
      run_cli("build --thm 1.1 --b1 11 --kmax 4 --verify", "SUBSETSUM_MEM_BUDGET=8");
  REQUIRE(from_env.code == 4);
  const RunResult flag_wins = run_cli(
      "build --thm 1.1 --b1 11 --kmax 4 --verify --mem-budget 33554432",
      "SUBSETSUM_MEM_BUDGET=8");
  REQUIRE(flag_wins.code == 0);
}

TEST_CASE("search outcomes map to exit codes") {
  const RunResult ex = run_cli("search --b 4,15");
  REQUIRE(ex.code == 0);
  REQUIRE(ex.out == "{\"outcome\":\"exhausted\",\"nodes\":5,\"max_depth\":4}\n");

  REQUIRE(run_cli("search --b 3").code == 0);

  const RunResult sat = run_cli("search --b 11,38");
  REQUIRE(sat.code == 0);
  const json j = json::parse(sat.out);
  REQUIRE(j.at("outcome") == "prefix_satisfiable");
  REQUIRE(j.at("witness") == json::array({1, 2, 3, 4, 12, 13, 14}));
  REQUIRE(j.at("note").get<std::string>().find("finite window") != std::string::npos);

  const RunResult capped = run_cli("search --b 11,38 --nodes 2");
  REQUIRE(capped.code == 5);
  const json c = json::parse(capped.out);
  REQUIRE(c.at("outcome") == "inconclusive");
  REQUIRE(c.at("limit").get<std::string>().find("node budget") != std::string::npos);
}

TEST_CASE("search validates its inputs") {
  REQUIRE(run_cli("search --b 4,14 --horizon 40").code == 2);
  REQUIRE(run_cli("search --b 14,4").code == 2);
  REQUIRE(run_cli("search").code == 2);                      // neither --b nor --b-file
  REQUIRE(run_cli("search --b 4 --b-file /dev/null").code == 2);  // both
}

TEST_CASE("excluded values can come from a commented file") {
  const std::filesystem::path p = scratch_file("blist");
  {
    std::ofstream f(p);
    f << "# excluded values\n  4\n\n15\n";
  }
  const RunResult r = run_cli("search --b-file '" + p.string() + "'");
  std::filesystem::remove(p);
  REQUIRE(r.code == 0);
  REQUIRE(json::parse(r.out).at("outcome") == "exhausted");
}

TEST_CASE("dead ends dump as one JSON object per line") {
  const std::filesystem::path p = scratch_file("deadends");
  const RunResult r = run_cli("search --b 4,14 --dump-deadends '" + p.string() + "'");
  REQUIRE(r.code == 0);
  std::ifstream in(p);
  std::string line;
  std::vector<json> rows;
  while (std::getline(in, line)) rows.push_back(json::parse(line));
  in.close();
  std::filesystem::remove(p);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].at("prefix") == json::array({1, 2, 5}));
  REQUIRE(rows[0].at("unmet") == 9);
  REQUIRE(rows[0].at("rejected").size() == 4);
}

TEST_CASE("classification reports all hypothesis sets") {
  const RunResult r = run_cli("classify --b 11,38,116,500");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.at("thmC").at("state") == "no");  // b3 = 116 just misses 3*b2 + 5
  REQUIRE(j.at("thmE").at("state") == "no");  // ... and 3*b2 + 3
  REQUIRE(j.at("thmD").at("state") == "no");
  REQUIRE(j.at("thm12").at("state") == "no");
  REQUIRE(j.at("problem1").at("state") == "yes");
  REQUIRE(j.at("problem1").at("m") == 3);
  REQUIRE(j.at("problem1").at("m1_ambiguous") == false);
  REQUIRE(j.at("d") == json::array({10, 37, 116, 337}));
  REQUIRE(j.at("equal_indices") == json::array({3}));

  const json tight = json::parse(run_cli("classify --b 11,36").out);
  REQUIRE(tight.at("thm12").at("state") == "yes");
  REQUIRE(tight.at("thm12").at("case") == "b2 = 3*b1 + 3");

  const json dcase = json::parse(run_cli("classify --b 5").out);
  REQUIRE(dcase.at("thmD").at("state") == "yes");
  REQUIRE(dcase.at("thmD").at("case") == "b1 in {3,5,6,9,10}");

  const json ambiguous = json::parse(run_cli("classify --b 10,40").out);
  REQUIRE(ambiguous.at("problem1").at("m1_ambiguous") == true);
  REQUIRE(ambiguous.at("problem1").at("state") == "no");
}

TEST_CASE("all output formats agree on the verdicts") {
  const json j = json::parse(run_cli("classify --b 11,38,116,500 --format json").out);
  const RunResult text = run_cli("classify --b 11,38,116,500 --format text");
  const RunResult csv = run_cli("classify --b 11,38,116,500 --format csv");
  REQUIRE(text.code == 0);
  REQUIRE(csv.code == 0);
  REQUIRE(text.out.find("problem1: yes [m=3]") != std::string::npos);
  REQUIRE(text.out.find("thmC: no") != std::string::npos);
  REQUIRE(csv.out.rfind("condition,state,detail\n", 0) == 0);
  REQUIRE(csv.out.find("problem1,yes,\"m=3\"") != std::string::npos);
  REQUIRE(j.at("problem1").at("state") == "yes");
}

TEST_CASE("thread count never changes the serialized outcome") {
  const RunResult one = run_cli("search --b 4,15");
  const RunResult four = run_cli("search --b 4,15 --threads 4");
  REQUIRE(four.code == 0);
  REQUIRE(four.out == one.out);
}

TEST_CASE("classification JSON revalidates against a direct library run") {
  const RunResult r = run_cli("classify --b 11,38,116,500");
  const json j = json::parse(r.out);
  const std::vector<subsetsum::u64> prefix{11, 38, 116, 500};
  const subsetsum::BClassification direct = subsetsum::classify_b(prefix);
  using subsetsum::io::verdict_from_string;
  REQUIRE(verdict_from_string(j.at("thmC").at("state")) == direct.thm_c.state);
  REQUIRE(verdict_from_string(j.at("thmE").at("state")) == direct.thm_e.state);
  REQUIRE(verdict_from_string(j.at("thmD").at("state")) == direct.thm_d.state);
  REQUIRE(verdict_from_string(j.at("thm12").at("state")) == direct.thm12.state);
  REQUIRE(verdict_from_string(j.at("problem1").at("state")) == direct.problem1.state);
  REQUIRE(j.at("d").get<std::vector<subsetsum::u64>>() == direct.comparison_d);
}

TEST_CASE("search JSON payloads round-trip through the re-parser") {
  using subsetsum::SearchOutcome;
  const RunResult ex = run_cli("search --b 4,15");
  const SearchOutcome a =
      subsetsum::io::search_outcome_from_json(subsetsum::io::json::parse(ex.out));
  REQUIRE(a.kind == SearchOutcome::Kind::exhausted);
  REQUIRE(a.nodes == 5);
  REQUIRE(a.max_depth_reached == 4);

  const RunResult sat = run_cli("search --b 11,38");
  const SearchOutcome b =
      subsetsum::io::search_outcome_from_json(subsetsum::io::json::parse(sat.out));
  REQUIRE(b.kind == SearchOutcome::Kind::prefix_satisfiable);
  REQUIRE(b.witness == std::vector<subsetsum::u64>{1, 2, 3, 4, 12, 13, 14});
}

TEST_CASE("usage errors and help") {
  REQUIRE(run_cli("--help").code == 0);
  REQUIRE(run_cli("search --help").code == 0);
  REQUIRE(run_cli("").code == 2);                       // a subcommand is required
  REQUIRE(run_cli("search --b 4,15 --bogus").code == 2);
  REQUIRE(run_cli("frobnicate").code == 2);
}
