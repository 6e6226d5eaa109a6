#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SPINSPEC_CLI;
const std::string kData = SPINSPEC_DATA;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spinspec_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" + kCli + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

struct CsvRow {
  std::vector<std::string> cells;
};

std::vector<CsvRow> csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::vector<CsvRow> rows;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    CsvRow r;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) r.cells.push_back(cell);
    rows.push_back(r);
  }
  return rows;
}

std::string spec(const std::string& name) { return "\"" + kData + "/" + name + ".json\""; }

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("analyze: golden values of the double-turn example") {
  const fs::path out = scratch("analyze_double_turn");
  REQUIRE(run("analyze " + spec("double_turn") + " --out " + out.string()) == 0);
  const json r = load(out / "report.json");
  CHECK(r["topological_charge"] == 1);
  CHECK(r["spin_structure"]["same"] == true);
  CHECK(r["action"].get<double>() == doctest::Approx(-std::pow(2 * kPi, 3)).epsilon(1e-9));
  CHECK(r["a"].get<double>() == doctest::Approx(4 * kPi / 3).epsilon(1e-9));
  CHECK(r["b_action"].get<double>() == doctest::Approx(-4 * kPi).epsilon(1e-9));
  CHECK(r["b_torsion"].get<double>() == doctest::Approx(-4 * kPi).epsilon(1e-9));
  CHECK(r["metric"]["max_deviation_from_identity"].get<double>() <= 1e-12);
}

TEST_CASE("analyze: standard Pauli symbol") {
  const fs::path out = scratch("analyze_standard");
  REQUIRE(run("analyze " + spec("standard") + " --out " + out.string()) == 0);
  const json r = load(out / "report.json");
  CHECK(r["a"].get<double>() == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
  CHECK(std::abs(r["b_action"].get<double>()) < 1e-12);
}

TEST_CASE("analyze: exit codes") {
  const fs::path out = scratch("analyze_single");
  CHECK(run("analyze " + spec("single_turn") + " --out " + out.string()) == 3);
  const json r = load(out / "report.json");
  CHECK(r["spin_structure"]["same"] == false);
  REQUIRE(r["spin_structure"]["cycles"].size() == 1);
  CHECK(r["spin_structure"]["cycles"][0] == "x3");

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << R"({"symbol": [[{"k":[0,0,0],"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}],[],[]]})";
  CHECK(run("analyze " + bad.string() + " --out " + scratch("x").string()) == 2);
  CHECK(run("analyze /nonexistent/spec.json --out " + scratch("x").string()) == 2);

  const fs::path degenerate = scratch("degenerate.json");
  std::ofstream(degenerate) << R"({"symbol": [)"
                               R"([{"k":[0,0,0],"re":[[0,1],[1,0]],"im":[[0,0],[0,0]]}],)"
                               R"([{"k":[0,0,0],"re":[[0,1],[1,0]],"im":[[0,0],[0,0]]}],)"
                               R"([{"k":[0,0,0],"re":[[1,0],[0,-1]],"im":[[0,0],[0,0]]}]]})";
  CHECK(run("analyze " + degenerate.string() + " --out " + scratch("y").string()) == 4);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("spectrum: exact eigenvalues of the double-turn example at M = 4") {
  const fs::path out = scratch("spectrum_dt");
  REQUIRE(run("spectrum " + spec("double_turn") + " --out " + out.string() + " --M 4 --lambda-max 2") == 0);
  int ones = 0, zeros = 0, twos = 0;
  for (const CsvRow& row : csv(out / "eigenvalues.csv")) {
    const double l = std::stod(row.cells[1]);
    ones += std::abs(l - 1.0) < 1e-8;
    zeros += std::abs(l) < 1e-8;
    twos += std::abs(l - 2.0) < 1e-8;
  }
  CHECK(ones == 2);
  CHECK(zeros == 6);
  CHECK(twos == 6);
  const auto counting = csv(out / "counting.csv");
  REQUIRE(counting.size() == 2);
  CHECK(counting[1].cells[1] == "2");
  CHECK(load(out / "spectrum.json")["dimension"] == 1458);
}

TEST_CASE("spectrum: truncation too small") {
  CHECK(run("spectrum " + spec("double_turn") + " --out " + scratch("sp0").string() + " --M 0") == 5);
}

TEST_CASE("spectrum: constant weight 4 quarters every eigenvalue") {
  const fs::path a = scratch("spectrum_w1"), b = scratch("spectrum_w4");
  REQUIRE(run("spectrum " + spec("standard") + " --out " + a.string() + " --M 2 --lambda-max 1") == 0);
  REQUIRE(run("spectrum " + spec("standard_weight4") + " --out " + b.string() + " --M 2 --lambda-max 1") == 0);
  const auto ra = csv(a / "eigenvalues.csv"), rb = csv(b / "eigenvalues.csv");
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(std::stod(rb[i].cells[1]) == doctest::Approx(std::stod(ra[i].cells[1]) / 4.0).epsilon(1e-12));
  }
  // The constant Pauli operator has a spectrum symmetric about zero.
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(std::abs(std::stod(ra[i].cells[1]) + std::stod(ra[ra.size() - 1 - i].cells[1])) < 1e-10);
  }
}

TEST_CASE("spectrum output does not depend on the thread count") {
  const fs::path a = scratch("threads1"), b = scratch("threads3");
  const std::string args = "spectrum " + spec("double_turn") + " --M 4 --lambda-max 2 --out ";
  REQUIRE(run(args + a.string(), "SPINSPEC_THREADS=1") == 0);
  REQUIRE(run(args + b.string(), "SPINSPEC_THREADS=3") == 0);
  CHECK(slurp(a / "eigenvalues.csv") == slurp(b / "eigenvalues.csv"));
  CHECK(slurp(a / "counting.csv") == slurp(b / "counting.csv"));
}

TEST_CASE("verify: fault injection and unknown suites") {
  CHECK(run("verify " + spec("double_turn") + " --suite subprincipal --out " + scratch("v0").string()) == 0);
  const fs::path out = scratch("v1");
  CHECK(run("verify " + spec("double_turn") + " --suite subprincipal --inject-subprincipal-fault --out " +
            out.string()) == 6);
  const json r = load(out / "verify.json");
  CHECK(r["passed"] == false);
  CHECK(run("verify " + spec("double_turn") + " --suite nonsense --out " + scratch("v2").string()) == 2);
  CHECK(run("verify " + spec("double_turn") + " --suite rigid --seed 7 --out " + scratch("v3").string()) == 0);
}

TEST_CASE("count: small table and budget") {
  const fs::path out = scratch("count_small");
  REQUIRE(run("count --out " + out.string() + " --lambda-max 2.6 --a 4.18879020479 --b -12.566370614359172") == 0);
  const auto rows = csv(out / "counting.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].cells[0] == "0.5");
  CHECK(rows[0].cells[1] == "0");
  CHECK(rows[1].cells[1] == "2");
  CHECK(rows[2].cells[1] == "20");
  CHECK(run("count --out " + scratch("count_big").string() + " --lambda-max 501") == 2);
}

TEST_CASE("count: window statistics at lambda 100") {
  const fs::path a = scratch("count_b"), b = scratch("count_b0");
  REQUIRE(run("count --out " + a.string() + " --lambda-max 100 --a 4.1887902047863905 --b -12.566370614359172") == 0);
  REQUIRE(run("count --out " + b.string() + " --lambda-max 100 --a 4.1887902047863905 --b 0") == 0);
  const double with_b = load(a / "count.json")["window_mean_residual_over_lambda2"];
  const double without_b = load(b / "count.json")["window_mean_residual_over_lambda2"];
  CHECK(without_b - with_b == doctest::Approx(-4 * kPi).epsilon(1e-12));
  CHECK(load(a / "count.json")["exponent"].get<double>() <= 1.6);
}
