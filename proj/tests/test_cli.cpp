#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#ifndef JDOPT_CLI_PATH
#error "JDOPT_CLI_PATH must point at the built jdopt binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

// Runs the CLI with stdout+stderr captured to a scratch file.
RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_test_output.txt";
    const std::string cmd =
        std::string(JDOPT_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kIpoConfig = R"({
  "problem": "ipo",
  "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1,
  "r": 1.25, "a": 1.0
})";

const char* kHarvestConfig = R"({
  "problem": "harvest",
  "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1
})";

} // namespace

TEST_CASE("solve ipo: artifact carries the reference boundary") {
    write_file("cfg_ipo.json", kIpoConfig);
    const RunResult res = run_cli("solve --config cfg_ipo.json --out sol_ipo");
    REQUIRE(res.exit_code == 0);

    const auto artifact = nlohmann::json::parse(read_file("sol_ipo.json"));
    CHECK(artifact.at("problem") == "ipo");
    CHECK(std::fabs(artifact.at("b").get<double>() - 4.7641) < 1e-3);

    // CSV table exists with a header and data rows.
    const std::string csv = read_file("sol_ipo.csv");
    CHECK(csv.rfind("x,v,v1,v2", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') > 10);
}

TEST_CASE("solve harvest: artifact carries the reference barrier") {
    write_file("cfg_harvest.json", kHarvestConfig);
    const RunResult res = run_cli("solve --config cfg_harvest.json --out sol_harvest");
    REQUIRE(res.exit_code == 0);
    const auto artifact = nlohmann::json::parse(read_file("sol_harvest.json"));
    CHECK(std::fabs(artifact.at("b").get<double>() - 1.276) < 1e-2);
}

TEST_CASE("validation failures exit with code 2") {
    write_file("cfg_bad.json", R"({"problem":"ipo","eta":-1.0,"r":1.25})");
    CHECK(run_cli("solve --config cfg_bad.json --out sol_bad").exit_code == 2);

    // r = 1 rejected for compare.
    write_file("cfg_cmp_bad.json",
               R"({"mu":-0.05,"sigma":0.25,"lambda":0.75,"eta":1.5,"alpha":0.1,
                   "r_list":[1.0]})");
    CHECK(run_cli("compare --config cfg_cmp_bad.json --out cmp_bad").exit_code == 2);
}

TEST_CASE("verify: solved artifacts pass, perturbed ones exit 4") {
    write_file("cfg_ipo.json", kIpoConfig);
    REQUIRE(run_cli("solve --config cfg_ipo.json --out sol_ipo").exit_code == 0);
    CHECK(run_cli("verify --config cfg_ipo.json --solution sol_ipo.json "
                  "--out rep_ipo").exit_code == 0);

    write_file("cfg_harvest.json", kHarvestConfig);
    REQUIRE(run_cli("solve --config cfg_harvest.json --out sol_harvest").exit_code == 0);
    CHECK(run_cli("verify --config cfg_harvest.json --solution sol_harvest.json "
                  "--out rep_harvest").exit_code == 0);

    // Perturb the boundary by 5%: verification must fail.
    auto artifact = nlohmann::json::parse(read_file("sol_ipo.json"));
    artifact["b"] = artifact["b"].get<double>() * 1.05;
    write_file("sol_ipo_bad.json", artifact.dump(2));
    CHECK(run_cli("verify --config cfg_ipo.json --solution sol_ipo_bad.json "
                  "--out rep_bad").exit_code == 4);
}

TEST_CASE("verify: reports are byte-stable across runs") {
    write_file("cfg_harvest.json", kHarvestConfig);
    REQUIRE(run_cli("solve --config cfg_harvest.json --out sol_rt").exit_code == 0);
    REQUIRE(run_cli("verify --config cfg_harvest.json --solution sol_rt.json "
                    "--out rep_rt1").exit_code == 0);
    REQUIRE(run_cli("verify --config cfg_harvest.json --solution sol_rt.json "
                    "--out rep_rt2").exit_code == 0);
    CHECK(read_file("rep_rt1.json") == read_file("rep_rt2.json"));
    CHECK(!read_file("rep_rt1.json").empty());
}

TEST_CASE("sweep: eta column decreasing, bad ranges exit 2") {
    write_file("cfg_sweep.json", R"({
      "problem": "ipo",
      "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1,
      "r": 1.25, "a": 1.0,
      "sweep": {"param": "eta", "lo": 1.0, "hi": 2.0, "n": 5}
    })");
    REQUIRE(run_cli("sweep --config cfg_sweep.json --out swp").exit_code == 0);
    const std::string csv = read_file("swp.csv");
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    double prev = 1e300;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto first = line.find(',');
        REQUIRE(first != std::string::npos);
        const auto second = line.find(',', first + 1);
        REQUIRE(second != std::string::npos);
        const double b = std::stod(line.substr(second + 1));
        CHECK(b < prev);
        prev = b;
        ++rows;
    }
    CHECK(rows == 5);

    write_file("cfg_sweep_bad.json", R"({
      "problem": "ipo",
      "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1,
      "r": 1.25,
      "sweep": {"param": "eta", "lo": 2.0, "hi": 1.0, "n": 5}
    })");
    CHECK(run_cli("sweep --config cfg_sweep_bad.json --out swp_bad").exit_code == 2);
}

TEST_CASE("compare: shared grid with one harvest and one ipo column per r") {
    write_file("cfg_cmp.json", R"({
      "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1,
      "r_list": [1.25]
    })");
    REQUIRE(run_cli("compare --config cfg_cmp.json --out cmp").exit_code == 0);
    const std::string csv = read_file("cmp.csv");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header.find("v_harvest") != std::string::npos);
    CHECK(header.find("v_ipo_r1.25") != std::string::npos);
}

TEST_CASE("simulate: JSON estimate with analytic value and z-score") {
    write_file("cfg_sim.json", R"({
      "problem": "harvest",
      "mu": -0.05, "sigma": 0.25, "lambda": 0.75, "eta": 1.5, "alpha": 0.1,
      "sim": {"n_paths": 2000, "dt": 0.01, "horizon": 200, "x0": 1.0}
    })");
    const RunResult res = run_cli("simulate --config cfg_sim.json --out sim --seed 4");
    REQUIRE(res.exit_code == 0);
    const auto out = nlohmann::json::parse(read_file("sim.json"));
    CHECK(out.contains("mean"));
    CHECK(out.contains("std_error"));
    CHECK(out.contains("analytic"));
    CHECK(out.contains("z_score"));
    CHECK(out.at("n_paths") == 2000);
}

TEST_CASE("flags override config values") {
    write_file("cfg_ipo.json", kIpoConfig);
    REQUIRE(run_cli("solve --config cfg_ipo.json --a 0 --out sol_a0").exit_code == 0);
    const auto a0 = nlohmann::json::parse(read_file("sol_a0.json"));
    const auto a1 = nlohmann::json::parse(read_file("sol_ipo.json"));
    CHECK(a0.at("a").get<double>() == 0.0);
    CHECK(a0.at("b").get<double>() != a1.at("b").get<double>());
}
