// SPDX-License-Identifier: Apache-2.0

#include "knotdoa/json_io.hpp"
#include "knotdoa/lasso_path.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace knotdoa;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string &args) {
    const std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                 "/knotdoa_cli_out.txt";
    const std::string cmd = std::string(KNOTDOA_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(status), ss.str()};
}

std::string write_temp(const std::string &name, const std::string &payload) {
    const std::string path =
        std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
    std::ofstream out(path);
    out << payload;
    return path;
}

}  // namespace

TEST_CASE("threshold subcommand prints the exponential quantile", "[cli]") {
    const CliRun r = run_cli("threshold --test B --pc 0.99");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("4.60517") != std::string::npos);

    const CliRun ra = run_cli("threshold --test A --m 8 --s 1 --pc 0.99");
    REQUIRE(ra.exit_code == 0);
    REQUIRE(ra.out.find("3.6185") != std::string::npos);
}

TEST_CASE("detect subcommand reports a noiseless source", "[cli]") {
    ArrayConfig cfg;
    cfg.num_elements = 8;
    cfg.num_grid = 8;
    const ArrayModel model = build_array_model(cfg, GridMode::orthogonal);
    const std::string model_path =
        write_temp("knotdoa_model.json", model_to_json(cfg, GridMode::orthogonal).dump());

    Snapshot snap;
    snap.b = model.steering.col(4);
    const std::string snap_path = write_temp("knotdoa_snap.json", to_json(snap).dump());

    const CliRun r = run_cli("detect --model " + model_path + " --snapshot " + snap_path +
                             " --test B --pc 0.99 --sigma 1e-12");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["s_hat"] == 1);
    REQUIRE(j["support"][0] == 4);
}

TEST_CASE("path subcommand round trips knot values", "[cli]") {
    ArrayConfig cfg;
    cfg.num_elements = 8;
    cfg.num_grid = 8;
    const ArrayModel model = build_array_model(cfg, GridMode::orthogonal);
    Scenario scen;
    scen.source_indices = {2, 5};
    scen.offsets = {0.0, 0.0};
    scen.weights = CxVector::Ones(2) / std::sqrt(2.0);
    scen.snr_db = 20.0;
    const Snapshot snap = synthesize(model, scen, 31);
    const KnotPath path = orthogonal_knots(model, snap.b);

    const std::string model_path =
        write_temp("knotdoa_model2.json", model_to_json(cfg, GridMode::orthogonal).dump());
    const std::string snap_path = write_temp("knotdoa_snap2.json", to_json(snap).dump());

    const CliRun r = run_cli("path --model " + model_path + " --snapshot " + snap_path);
    REQUIRE(r.exit_code == 0);

    std::stringstream ss(r.out);
    std::string line;
    std::getline(ss, line);  // header
    int k = 0;
    while (std::getline(ss, line) && k < path.num_knots()) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double tau = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double expect = path.knots[static_cast<size_t>(k)].tau;
        // printed with 9 significant digits
        REQUIRE(tau == Catch::Approx(expect).epsilon(1e-8));
        ++k;
    }
    REQUIRE(k == path.num_knots());
}

TEST_CASE("usage and parse failures exit with code 1", "[cli]") {
    REQUIRE(run_cli("detect --nonsense 1").exit_code == 1);
    REQUIRE(run_cli("frobnicate").exit_code == 1);

    const std::string bad = write_temp("knotdoa_bad.json", "{ not json");
    const std::string snap = write_temp("knotdoa_snap3.json", "{\"b\": [[1.0, 0.0]]}");
    const CliRun r = run_cli("detect --model " + bad + " --snapshot " + snap +
                             " --test B --sigma 1");
    REQUIRE(r.exit_code == 1);
    REQUIRE(r.out.find("JSON") != std::string::npos);
}

TEST_CASE("simulate subcommand produces a csv report", "[cli][slow]") {
    nlohmann::json cfg;
    cfg["num_elements"] = 8;
    cfg["num_grid"] = 8;
    cfg["mode"] = "orthogonal";
    cfg["tests"] = {"A"};
    cfg["source_indices"] = {4};
    cfg["snr_grid_db"] = {15.0};
    cfg["trials"] = 500;
    cfg["base_seed"] = 11;
    const std::string cfg_path = write_temp("knotdoa_exp.json", cfg.dump());

    const CliRun r = run_cli("simulate --config " + cfg_path + " --out -");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("test,s,snr_db", 0) == 0);
    REQUIRE(r.out.find("A,1,15") != std::string::npos);
}

TEST_CASE("simulate reproduces a published table side by side", "[cli][slow]") {
    const CliRun r = run_cli("simulate --table 3 --trials 500 --out -");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.rfind("table,test,s,snr_db", 0) == 0);
    // ten SNR rows for each of the four sub-tables, plus the header
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    REQUIRE(lines == 1 + 40);
    REQUIRE(r.out.find("0.9901") != std::string::npos);  // published reference column
}

TEST_CASE("version flag", "[cli]") {
    const CliRun r = run_cli("--version");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("0.1.0") != std::string::npos);
}
