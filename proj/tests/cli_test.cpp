#include "test_support.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

using nlohmann::json;
using test_support::file_exists;
using test_support::read_file;
using test_support::run_command;
using test_support::temp_path;
using test_support::write_file;

namespace {

const std::string kCli = LAXCOV_CLI_PATH;

std::string cli(const std::string& args) { return "\"" + kCli + "\" " + args; }

} // namespace

TEST_CASE("help text documents artifacts and exit codes") {
    auto r = run_command(cli("--help"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("x, t, w") != std::string::npos);
    CHECK(r.out.find("re_u_") != std::string::npos);
    CHECK(r.out.find("res_chi") != std::string::npos);
    CHECK(r.out.find("exit") != std::string::npos);
}

TEST_CASE("verification run emits a well formed report") {
    std::string out = temp_path("zs7.json");
    std::remove(out.c_str());
    auto r = run_command(cli("verify-zs --seed 7 --out " + out));
    CHECK(r.exit_code == 0);
    REQUIRE(file_exists(out));
    json doc = json::parse(read_file(out));
    CHECK(doc.at("report_version").get<int>() == 1);
    CHECK(doc.at("command").get<std::string>() == "verify-zs");
    CHECK(doc.at("seed").get<int>() == 7);
    const auto& checks = doc.at("checks");
    REQUIRE(checks.is_array());
    CHECK(checks.size() >= 6);
    std::string prev;
    for (const auto& c : checks) {
        CHECK(c.contains("name"));
        CHECK(c.contains("residual"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
        std::string name = c.at("name").get<std::string>();
        CHECK(prev <= name);
        prev = name;
    }
}

TEST_CASE("repeat runs are byte identical") {
    std::string o1 = temp_path("det1.json"), o2 = temp_path("det2.json");
    std::remove(o1.c_str());
    std::remove(o2.c_str());
    auto r1 = run_command(cli("verify-all --seed 42 --out " + o1));
    auto r2 = run_command(cli("verify-all --seed 42 --out " + o2));
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out == r2.out);
    std::string f1 = read_file(o1), f2 = read_file(o2);
    REQUIRE(!f1.empty());
    CHECK(f1 == f2);
}

TEST_CASE("travelling bump amplitude from the command line") {
    std::string out = temp_path("soliton.csv");
    std::remove(out.c_str());
    auto r = run_command(cli("soliton --k 2 --a2 1 --alpha -0.75 --out " + out));
    CHECK(r.exit_code == 0);
    std::istringstream is(read_file(out));
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "x,t,w");
    double peak = 0.0;
    while (std::getline(is, line)) {
        auto last = line.rfind(',');
        REQUIRE(last != std::string::npos);
        peak = std::max(peak, std::stod(line.substr(last + 1)));
    }
    CHECK(std::abs(peak - 2.0) <= 1e-10);
}

TEST_CASE("chain artifact is structured json") {
    std::string out = temp_path("chain.json");
    std::remove(out.c_str());
    auto r = run_command(cli("chain --depth 2 --out " + out));
    CHECK(r.exit_code == 0);
    json doc = json::parse(read_file(out));
    CHECK(doc.at("chain_version").get<int>() == 1);
    CHECK(doc.at("depth").get<int>() == 2);
    REQUIRE(doc.at("levels").is_array());
    CHECK(doc.at("levels").size() == 2);
    for (const auto& lvl : doc.at("levels")) {
        CHECK(lvl.contains("spectral_residual"));
        CHECK(lvl.contains("potential"));
    }
}

TEST_CASE("trajectory artifact carries labelled columns") {
    auto r = run_command(cli("euler --dim 2 --y-end 0.02"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("y,re_u_0_0,im_u_0_0", 0) == 0);
    CHECK(r.out.find("drift_tr_1") != std::string::npos);
}

TEST_CASE("dressing run reports and exits cleanly") {
    auto r = run_command(cli("bdt --t-end 0.05 --seed 3"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("t,res_chi,res_phi,res_psi") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("malformed configuration aborts before any output") {
    std::string cfg = temp_path("bad_config.json");
    std::string out = temp_path("bad_config_out.csv");
    write_file(cfg, "{\"command\": \"soliton\", \"bogus\": 1}");
    std::remove(out.c_str());
    auto r = run_command(cli("--config " + cfg + " --out " + out));
    CHECK(r.exit_code == 2);
    CHECK_FALSE(file_exists(out));

    std::string cfg2 = temp_path("bad_json.json");
    write_file(cfg2, "{not json");
    auto r2 = run_command(cli("--config " + cfg2));
    CHECK(r2.exit_code == 2);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run_command(cli("")).exit_code == 2);
    CHECK(run_command(cli("frobnicate")).exit_code == 2);
    CHECK(run_command(cli("verify-dt --no-such-flag")).exit_code == 2);
    CHECK(run_command(cli("verify-dt --tol bell=-1")).exit_code == 2);
    CHECK(run_command(cli("soliton --n-x 1")).exit_code == 2);
    CHECK(run_command(cli("chain --format csv")).exit_code == 2);
    CHECK(run_command(cli("chain --depth 9")).exit_code == 2);
}

TEST_CASE("configuration file drives a run and flags override it") {
    std::string cfg = temp_path("sol_config.json");
    write_file(cfg, "{\"command\": \"soliton\", \"soliton\": {\"k\": 1.0}}");
    std::string out = temp_path("sol_cfg.csv");
    std::remove(out.c_str());
    auto r = run_command(cli("--config " + cfg + " --out " + out));
    CHECK(r.exit_code == 0);
    // k = 1 gives peak a2 k^2 / 2 = 0.5
    CHECK(r.out.find("0.5") != std::string::npos);
    REQUIRE(file_exists(out));

    std::string out2 = temp_path("sol_cfg2.csv");
    std::remove(out2.c_str());
    auto r2 = run_command(cli("soliton --config " + cfg + " --k 2 --out " + out2));
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("2 (expected") != std::string::npos);
}
