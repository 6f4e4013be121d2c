#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dl/cli.hpp"

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = dl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("spectrum lists sorted unique eigenvalues") {
    auto res = run_cli({"spectrum", "--q", "2", "--r", "2", "--n-max", "4"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("m,n,lambda") == 0);
    CHECK(res.out.find("0.5") != std::string::npos);
    CHECK(res.out.find("-0.707106781187") != std::string::npos);
    // 5 atoms for n <= 4: (1,2), (1,3), (2,3), (1,4), (3,4).
    int lines = 0;
    for (char c : res.out)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 5 + 1);  // header + rows + note
}

TEST_CASE("spectrum is never empty") {
    auto res = run_cli({"spectrum", "--q", "3", "--r", "4", "--n-max", "2"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("\n1,2,0\n") != std::string::npos);
}

TEST_CASE("return-prob exact column") {
    auto res = run_cli({"return-prob", "--q", "2", "--r", "2", "--N", "2", "--method", "dp"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("1/4") != std::string::npos);

    auto odd = run_cli({"return-prob", "--q", "2", "--r", "3", "--N", "3", "--method", "all"});
    REQUIRE(odd.code == 0);
    CHECK(odd.out.find("\n3,0,0,") != std::string::npos);
}

TEST_CASE("return-prob dp agrees with spectral sum") {
    auto res = run_cli({"return-prob", "--q", "2", "--r", "2", "--N", "8", "--method", "all",
                        "--n-max", "40"});
    REQUIRE(res.code == 0);
    auto pos = res.out.rfind(',');
    double rel = std::stod(res.out.substr(pos + 1));
    CHECK(rel < 1e-8);
}

TEST_CASE("tetra oracle flag controls exit code") {
    auto good = run_cli({"tetra", "--q", "2", "--r", "3", "--height", "3", "--oracle", "--tol",
                         "1e-9"});
    CHECK(good.code == 0);
    CHECK(good.out.find("max_oracle_diff") != std::string::npos);
    CHECK(good.out.find("total_multiplicity=65") != std::string::npos);

    auto impossible = run_cli({"tetra", "--q", "2", "--r", "3", "--height", "3", "--oracle",
                               "--tol", "1e-17"});
    CHECK(impossible.code == 2);
}

TEST_CASE("budget exceeded maps to exit 3") {
    auto res = run_cli({"tetra", "--q", "2", "--r", "3", "--height", "6", "--oracle", "--budget",
                        "100"});
    CHECK(res.code == 3);
    auto walk = run_cli({"return-prob", "--q", "2", "--r", "2", "--N", "12", "--method", "dp",
                         "--budget", "50"});
    CHECK(walk.code == 3);
}

TEST_CASE("out flag writes the same bytes as stdout") {
    std::string path = "cli_out_test.tmp.csv";
    auto direct = run_cli({"spectrum", "--q", "2", "--r", "3", "--n-max", "5"});
    auto filed = run_cli({"spectrum", "--q", "2", "--r", "3", "--n-max", "5", "--out", path});
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream got;
    got << in.rdbuf();
    CHECK(got.str() == direct.out);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("usage errors map to exit 1") {
    CHECK(run_cli({"unknown-command"}).code == 1);
    CHECK(run_cli({"spectrum", "--q", "1"}).code == 1);
    CHECK(run_cli({"tetra", "--mode", "truncated", "--oracle"}).code == 1);
    CHECK(run_cli({}).code == 1);
}

TEST_CASE("json output is valid and mirrors csv columns") {
    auto res = run_cli({"plancherel", "--q", "2", "--r", "3", "--n-max", "6", "--format", "json"});
    REQUIRE(res.code == 0);
    auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["command"] == "plancherel");
    std::vector<std::string> cols = doc["columns"];
    CHECK(cols == std::vector<std::string>{"m", "n", "lambda", "mass"});
    REQUIRE(doc["rows"].size() > 0);
    CHECK(doc["rows"][0].size() == 4);
    CHECK(doc["notes"].contains("total_mass"));

    auto csv = run_cli({"plancherel", "--q", "2", "--r", "3", "--n-max", "6"});
    CHECK(csv.out.find("m,n,lambda,mass") == 0);
}

TEST_CASE("determinism of repeated runs") {
    std::vector<std::string> args{"folner", "--q",           "2", "--r", "3", "--n-lo", "2",
                                  "--n-hi", "4", "--moments-up-to", "3"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("classification=expanding") != std::string::npos);

    auto sim1 = run_cli({"simulate", "--q", "2", "--r", "2", "--alpha", "0.9", "--steps", "12",
                         "--trials", "20", "--seed", "42"});
    auto sim2 = run_cli({"simulate", "--q", "2", "--r", "2", "--alpha", "0.9", "--steps", "12",
                         "--trials", "20", "--seed", "42"});
    CHECK(sim1.code == 0);
    CHECK(sim1.out == sim2.out);
}

TEST_CASE("mu-ox total mass vanishes away from the origin") {
    auto res = run_cli({"mu-ox", "--q", "2", "--r", "2", "--x-path", "d0,d1", "--n-max", "20",
                        "--ell-max", "8"});
    REQUIRE(res.code == 0);
    auto pos = res.out.find("total_mass=");
    REQUIRE(pos != std::string::npos);
    double total = std::stod(res.out.substr(pos + 11));
    auto tpos = res.out.find("tail_bound=");
    REQUIRE(tpos != std::string::npos);
    double tail = std::stod(res.out.substr(tpos + 11));
    CHECK(std::abs(total) <= tail + 1e-9);
}

TEST_CASE("asymptotics table is monotone in the ratio column") {
    auto res = run_cli({"asymptotics", "--q", "2", "--r", "2", "--N", "1000", "--N", "10000",
                        "--n-max", "400"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find("N,direct,asymptotic,ratio") == 0);
}

TEST_CASE("golden files reproduce bit-exactly") {
    auto check_golden = [](const std::vector<std::string>& args, const std::string& file) {
        std::ifstream in(std::string(GOLDEN_DIR) + "/" + file);
        REQUIRE(in.good());
        std::stringstream want;
        want << in.rdbuf();
        auto res = run_cli(args);
        REQUIRE(res.code == 0);
        CHECK(res.out == want.str());
    };
    check_golden({"spectrum", "--q", "2", "--r", "2", "--n-max", "6"}, "spectrum_2_2_n6.csv");
    check_golden({"plancherel", "--q", "2", "--r", "3", "--n-max", "8"}, "plancherel_2_3_n8.csv");
    check_golden({"tetra", "--q", "2", "--r", "3", "--height", "2"}, "tetra_2_3_h2.csv");
    check_golden({"folner", "--q", "2", "--r", "2", "--n-lo", "3", "--n-hi", "5",
                  "--moments-up-to", "4"},
                 "folner_2_2.csv");
    check_golden({"simulate", "--q", "2", "--r", "2", "--alpha", "0.9", "--steps", "50",
                  "--trials", "25", "--seed", "99"},
                 "simulate_2_2.csv");
}

TEST_SUITE_END();
