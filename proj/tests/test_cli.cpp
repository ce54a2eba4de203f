#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QSTEER_CLI_PATH) + " " + args;
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("reproduce succeeds and is byte-stable") {
  const CommandResult first = run_cli("reproduce");
  CHECK(first.exit_code == 0);
  CHECK(first.output.find("FAIL") == std::string::npos);

  const CommandResult second = run_cli("reproduce");
  CHECK(second.output == first.output);

  const CommandResult json_run = run_cli("reproduce --json");
  CHECK(json_run.exit_code == 0);
  const auto doc = nlohmann::json::parse(json_run.output);
  CHECK(doc.at("library_version").is_string());
  CHECK(doc.at("results").at("all_pass").get<bool>());
  for (const auto& row : doc.at("results").at("rows"))
    CHECK(row.at("pass").get<bool>());
}

TEST_CASE("reproduce exit code reflects the tolerance gate") {
  const CommandResult strict = run_cli("reproduce --tolerance 0 2>/dev/null");
  CHECK(strict.exit_code == 2);
}

TEST_CASE("scan emits matching CSV and JSON") {
  const std::string csv_path = "qsteer_scan_test.csv";
  const CommandResult res = run_cli(
      "scan --axis f --steps 9 --theta 0.5235987755982988 --json --csv " +
      csv_path);
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  const auto& rows = doc.at("results").at("rows");
  REQUIRE(rows.size() == 9);

  std::ifstream csv(csv_path, std::ios::binary);
  REQUIRE(csv.good());
  std::stringstream ss;
  ss << csv.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find('\r') == std::string::npos);  // LF endings

  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "theta,f,lhs,bound,margin,f_min,werner_class");

  std::size_t row_idx = 0;
  while (std::getline(lines, line)) {
    REQUIRE(row_idx < rows.size());
    std::istringstream cells(line);
    std::string cell;
    const char* keys[6] = {"theta", "f", "lhs", "bound", "margin", "f_min"};
    for (const char* key : keys) {
      REQUIRE(std::getline(cells, cell, ','));
      // Every numeric CSV cell round-trips to the JSON value exactly.
      CHECK(std::strtod(cell.c_str(), nullptr) ==
            rows[row_idx].at(key).get<double>());
    }
    REQUIRE(std::getline(cells, cell, ','));
    CHECK(cell == rows[row_idx].at("werner_class").get<std::string>());
    ++row_idx;
  }
  CHECK(row_idx == rows.size());
  std::remove(csv_path.c_str());

  // Monotone lhs along the f axis: 3/2 + 3f/2.
  double previous = -1.0;
  for (const auto& row : rows) {
    CHECK(row.at("lhs").get<double>() > previous);
    previous = row.at("lhs").get<double>();
  }
  CHECK(rows.front().at("lhs").get<double>() == 1.5);
  CHECK(rows.back().at("lhs").get<double>() == 3.0);
}

TEST_CASE("scan over theta keeps the pure-state sum at 3") {
  const CommandResult res =
      run_cli("scan --axis theta --min 0.15 --max 1.4 --steps 7 --f 1 --json");
  REQUIRE(res.exit_code == 0);
  const auto doc = nlohmann::json::parse(res.output);
  for (const auto& row : doc.at("results").at("rows"))
    CHECK(row.at("lhs").get<double>() == 3.0);
}

TEST_CASE("protocol subcommand values") {
  const CommandResult p1 =
      run_cli("protocol p1 --theta 1.0471975511965976 --obs x --json");
  REQUIRE(p1.exit_code == 0);
  auto doc = nlohmann::json::parse(p1.output);
  CHECK(doc.at("results").at("trace_distance").get<double>() == 0.25);
  CHECK(doc.at("results").at("operationally_real").get<bool>());

  const CommandResult flat = run_cli("protocol p1 --mixed --obs x --json");
  doc = nlohmann::json::parse(flat.output);
  CHECK_FALSE(doc.at("results").at("operationally_real").get<bool>());

  const CommandResult p2 =
      run_cli("protocol p2 --theta 0.7853981633974483 --obs z --json");
  doc = nlohmann::json::parse(p2.output);
  CHECK(doc.at("results").at("trace_distance").get<double>() == 0.5);
  CHECK(doc.at("results").at("operationally_real").get<bool>());
}

TEST_CASE("sample subcommand is seed-deterministic") {
  const std::string args =
      "sample --theta 0.5235987755982988 --f 0.8 --n 20000 --seed 11 --json";
  const CommandResult first = run_cli(args);
  const CommandResult second = run_cli(args);
  REQUIRE(first.exit_code == 0);
  CHECK(first.output == second.output);

  const auto doc = nlohmann::json::parse(first.output);
  CHECK(doc.at("parameters").at("rng").get<std::string>() == "splitmix64");
  CHECK(doc.at("seed").get<std::uint64_t>() == 11);
  const double z = doc.at("results").at("z_score").get<double>();
  CHECK(std::abs(z) <= 4.0);

  const CommandResult other = run_cli(
      "sample --theta 0.5235987755982988 --f 0.8 --n 20000 --seed 12 --json");
  CHECK(other.output != first.output);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("scan --axis bogus 2>/dev/null").exit_code == 1);
  CHECK(run_cli("scan 2>/dev/null").exit_code == 1);
  CHECK(run_cli("protocol p3 2>/dev/null").exit_code == 1);
  CHECK(run_cli("scan --axis f --steps 1 2>/dev/null").exit_code == 1);
}
