#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrabi/cli.hpp"

using namespace qrabi::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qrabi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qrabi_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("decoupled spectrum") {
    const Result r = run_cli({"spectrum", "--Omega", "1", "--g", "0", "--methods", "ed", "--levels", "3"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(r.out.rfind("sweep_param,sweep_value,method,level,quantity,value\n", 0) == 0);
    CHECK(rows[1] == std::vector<std::string>{"g", "0", "ed", "0", "energy", "-1"});
    CHECK(std::abs(std::stod(rows[2][5])) < 1e-11);
    CHECK(std::abs(std::stod(rows[3][5])) < 1e-11);
  }

  TEST_CASE("sweep rows are sorted and complete") {
    const Result r = run_cli({"spectrum", "--Omega", "2", "--g-min", "0", "--g-max", "0.4", "--g-steps", "3",
                              "--methods", "vgrwa,grwa,adiabatic", "--levels", "4", "--n-max", "60"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 3 * 3 * 4);
    for (std::size_t i = 2; i < rows.size(); ++i) {
      const double a = std::stod(rows[i - 1][1]), b = std::stod(rows[i][1]);
      CHECK(a <= b);
      if (a == b) {
        CHECK(rows[i - 1][2] <= rows[i][2]);
        if (rows[i - 1][2] == rows[i][2]) CHECK(std::stoi(rows[i - 1][3]) < std::stoi(rows[i][3]));
      }
    }
    CHECK(rows[1][2] == "adiabatic");
    CHECK(rows.back()[1] == "0.4");
  }

  TEST_CASE("numbers carry 12 significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-20) == "1e-20");
  }

  TEST_CASE("photon at zero coupling and reference rows") {
    const Result r = run_cli({"photon", "--g", "0", "--Omega", "2", "--methods", "vgrwa", "--levels", "1"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1] == std::vector<std::string>{"g", "0", "reference", "0", "g2_over_2omega2", "0"});
    CHECK(rows[2] == std::vector<std::string>{"g", "0", "vgrwa", "0", "mean_photon", "0"});
  }

  TEST_CASE("photon Omega sweep orders the methods") {
    const Result r = run_cli({"photon", "--g", "0.1", "--Omega-min", "1", "--Omega-max", "5", "--Omega-steps", "3",
                              "--methods", "ed,vgrwa,grwa", "--levels", "1", "--n-max", "60"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 3 * 4);
    for (std::size_t i = 1; i < rows.size(); i += 4) {
      CHECK(rows[i][0] == "Omega");
      const double ed = std::stod(rows[i][5]), grwa = std::stod(rows[i + 1][5]);
      const double ref = std::stod(rows[i + 2][5]), var = std::stod(rows[i + 3][5]);
      CHECK(ref == doctest::Approx(0.005));
      CHECK(grwa > ref);
      CHECK(var < ref);
      CHECK(std::abs(var - ed) < std::abs(grwa - ed));
    }
  }

  TEST_CASE("dynamics first row and decoupled trace") {
    const Result r = run_cli({"dynamics", "--g", "0", "--Omega", "2", "--alpha", "2", "--methods", "vgrwa",
                              "--t-periods", "10", "--samples", "201"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 202);
    CHECK(rows[0] == std::vector<std::string>{"t", "t_over_2pi_Omega", "method", "jz", "p_minus1"});
    CHECK(rows[1] == std::vector<std::string>{"0", "0", "vgrwa", "-1", "1"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double t = std::stod(rows[i][0]);
      CHECK(std::abs(std::stod(rows[i][3]) + std::cos(2.0 * t)) < 1e-9);
    }
    CHECK(rows.back()[1] == "10");
  }

  TEST_CASE("dynamics with ED adds deviation traces") {
    const Result r = run_cli({"dynamics", "--g", "0.2", "--Omega", "2", "--t-periods", "2", "--samples", "5"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 5 * 5);
    CHECK(rows[1] == std::vector<std::string>{"0", "0", "ed", "-1", "1"});
    std::vector<std::string> methods;
    for (std::size_t i = 1; i <= 5; ++i) methods.push_back(rows[i][2]);
    CHECK(methods == std::vector<std::string>{"ed", "grwa", "grwa-ed", "vgrwa", "vgrwa-ed"});
    CHECK(std::abs(std::stod(rows[3][3])) < 1e-11);
  }

  TEST_CASE("JSON output") {
    const Result r = run_cli({"spectrum", "--Omega", "2", "--g", "0.3", "--methods", "vgrwa", "--levels", "2",
                              "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(r.out.find("\"meta\"") < r.out.find("\"rows\""));
    CHECK(j["meta"]["lambda_strategy"] == "closed-form");
    CHECK(j["meta"]["omega"] == 1.0);
    CHECK(j["meta"]["n_blocks"] == 10);
    CHECK(j["meta"]["n_max"] == 200);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["method"] == "vgrwa");
    CHECK(j["rows"][0]["quantity"] == "energy");
    const Result d = run_cli({"dynamics", "--g", "0.1", "--Omega", "2", "--methods", "grwa", "--t-periods", "1",
                              "--samples", "3", "--format", "json"});
    REQUIRE(d.code == 0);
    const auto jd = nlohmann::json::parse(d.out);
    CHECK(jd["rows"].size() == 3);
    CHECK(jd["rows"][0]["jz"] == -1.0);
    CHECK(jd["meta"]["alpha"] == 2.0);
  }

  TEST_CASE("output is deterministic across runs and worker counts") {
    const std::vector<std::string> args{"spectrum", "--Omega", "2", "--g-min", "0", "--g-max", "1", "--g-steps",
                                        "9", "--methods", "ed,vgrwa,grwa", "--levels", "5", "--n-max", "50"};
    setenv("QRABI_THREADS", "1", 1);
    const Result a = run_cli(args);
    setenv("QRABI_THREADS", "3", 1);
    const Result b = run_cli(args);
    const Result c = run_cli(args);
    unsetenv("QRABI_THREADS");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    setenv("QRABI_THREADS", "zero", 1);
    CHECK(run_cli(args).code == 2);
    unsetenv("QRABI_THREADS");
  }

  TEST_CASE("executable writes byte-identical files") {
    const auto f1 = scratch("a.csv"), f2 = scratch("b.csv");
    const std::string base = std::string(QRABI_CLI_PATH) +
                             " photon --g 0.3 --Omega-min 0.5 --Omega-max 5 --Omega-steps 4 --methods ed,vgrwa,grwa "
                             "--levels 4 --n-max 60 --output ";
    REQUIRE(std::system((base + f1.string()).c_str()) == 0);
    REQUIRE(std::system((base + f2.string()).c_str()) == 0);
    const std::string s1 = slurp(f1);
    CHECK_FALSE(s1.empty());
    CHECK(s1 == slurp(f2));
    std::filesystem::remove(f1);
    std::filesystem::remove(f2);
  }

  TEST_CASE("config file with flag precedence") {
    const auto cfg = scratch("cfg.ini");
    {
      std::ofstream f(cfg);
      f << "# sweep settings\nOmega = 2\ng = 0.3\nlevels = 2\nmethods = vgrwa\n";
    }
    const Result r = run_cli({"spectrum", "--config", cfg.string(), "--levels", "3"});
    REQUIRE(r.code == 0);
    const Result direct = run_cli({"spectrum", "--Omega", "2", "--g", "0.3", "--methods", "vgrwa", "--levels", "3"});
    CHECK(r.out == direct.out);
    {
      std::ofstream f(cfg);
      f << "bogus = 1\n";
    }
    CHECK(run_cli({"spectrum", "--config", cfg.string(), "--Omega", "2", "--g", "0.3"}).code == 2);
    CHECK(run_cli({"spectrum", "--config", scratch("missing.ini").string(), "--Omega", "2", "--g", "0"}).code == 2);
    std::filesystem::remove(cfg);
  }

  TEST_CASE("configuration errors exit with 2") {
    CHECK(run_cli({"spectrum", "--Omega-min", "1", "--Omega-max", "2", "--g-min", "0", "--g-max", "1"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g", "0.1", "--methods", "ed,magic"}).code == 2);
    CHECK(run_cli({"spectrum", "--g", "0.1"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g", "0.1", "--levels", "0"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g-min", "0.5", "--g-max", "0.1"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g-min", "0.5"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g", "-0.1"}).code == 2);
    CHECK(run_cli({"photon", "--Omega", "2", "--g", "0.1", "--methods", "adiabatic"}).code == 2);
    CHECK(run_cli({"dynamics", "--Omega", "0", "--g", "0.1"}).code == 2);
    CHECK(run_cli({"dynamics", "--Omega", "2", "--g", "0.1", "--methods", "adiabatic"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g", "0.1", "--lambda-strategy", "nope"}).code == 2);
    CHECK(run_cli({"spectrum", "--Omega", "2", "--g", "0.1", "--frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"validate", "--inject-fault", "C42"}).code == 2);
  }

  TEST_CASE("convergence failures exit with 3") {
    const Result r = run_cli({"spectrum", "--Omega", "2", "--g", "1", "--methods", "ed", "--levels", "7", "--n-max", "4"});
    CHECK(r.code == 3);
    CHECK(r.err.find("not converged") != std::string::npos);
    CHECK(run_cli({"dynamics", "--Omega", "2", "--g", "0.2", "--alpha", "5", "--methods", "ed", "--n-max", "10",
                   "--t-periods", "1", "--samples", "2"})
              .code == 3);
  }

  TEST_CASE("help exits cleanly") {
    const Result r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("spectrum") != std::string::npos);
    CHECK(run_cli({"dynamics", "--help"}).out.find("--alpha") != std::string::npos);
  }

  TEST_CASE("validate reports an injected fault by name") {
    const Result r = run_cli({"validate", "fast", "--inject-fault", "C8"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL C8-decoupled-limit") != std::string::npos);
    CHECK(r.out.find("PASS C7-f-coefficient-oracle") != std::string::npos);
    CHECK(r.out.find("SKIP C5-dynamics-dominance") != std::string::npos);
    CHECK(r.out.find("failed: C8-decoupled-limit") != std::string::npos);
  }
}
