#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace {

struct result {
    int code;
    std::string out, err;
};

result run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"qdephase"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = qdephase::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const std::filesystem::path& tmp() {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / "qdephase_cli_test";
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("sweep preset to stdout", "[cli]") {
    const auto r = run({"sweep", "--preset", "fig3"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, StartsWith("config,mode,g,p,lambda,tau,L,R,U,C,EW\n"));
    CHECK(count_lines(r.out) == 401);
}

TEST_CASE("sweep with explicit grid and output files", "[cli]") {
    const auto csv = (tmp() / "grid.csv").string();
    const auto meta = (tmp() / "grid.json").string();
    const auto r = run({"sweep", "--config", "both", "--mode", "GaussianExact", "--g", "0.1,0.4", "--p", "0.5,1",
                        "--lambda", "0.8", "--tau-max", "5", "--tau-points", "11", "--out", csv.c_str(),
                        "--meta-out", meta.c_str()});
    REQUIRE(r.code == 0);
    CHECK(count_lines(slurp(csv)) == 1 + 2 * 2 * 2 * 11);
    const auto m = nlohmann::json::parse(slurp(meta));
    CHECK(m["config"]["mode"] == "GaussianExact");
    CHECK(m["config"]["lambda"][0] == 0.8);
}

TEST_CASE("flags override the JSON config file", "[cli]") {
    const auto cfg = (tmp() / "cfg.json").string();
    std::ofstream(cfg) << R"({"preset": "fig6", "tau_points": 7, "p_values": [0.9]})";
    const auto r = run({"sweep", "--config-file", cfg.c_str(), "--tau-points", "5"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 1 + 5);
    CHECK_THAT(r.out, ContainsSubstring("\nIQN,PaperLiteral,0.4,0.9,"));
}

TEST_CASE("same seed gives byte-identical CSV", "[cli]") {
    const auto a = (tmp() / "mc_a.csv").string();
    const auto b = (tmp() / "mc_b.csv").string();
    for (const auto* path : {a.c_str(), b.c_str()})
        REQUIRE(run({"sweep", "--mode", "GaussianExact", "--g", "1", "--lambda", "0.5", "--tau-max", "2",
                     "--tau-points", "5", "--n-traj", "300", "--seed", "77", "--out", path})
                    .code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("ew subcommand", "[cli]") {
    const auto r = run({"ew", "--lambda", "1", "--p", "1", "--tau-points", "20"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 21);
    CHECK_THAT(r.out, ContainsSubstring("\nCQN,PaperLiteral,0,1,1,0,"));
}

TEST_CASE("validate-mc smoke run", "[cli]") {
    const auto r = run({"validate-mc", "--g", "0.4", "--lambda", "0.5", "--n-traj", "100", "--taus", "1,2"});
    CHECK((r.code == 0 || r.code == 3));
    CHECK_THAT(r.out, StartsWith("config,g,lambda,p,tau,mc_corner,mc_abs,std_error,expected,z\n"));
    CHECK(count_lines(r.out) == 3);
    CHECK_THAT(r.err, ContainsSubstring("max |z|"));
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run({"sweep", "--bogus"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"sweep", "--preset", "fig12"}).code == 1);
    CHECK(run({"sweep", "--p", "1.5"}).code == 1);
    CHECK(run({"sweep", "--g", "-0.4"}).code == 1);
    CHECK(run({"sweep", "--config", "XQN"}).code == 1);
    CHECK(run({"validate-mc", "--n-traj", "50"}).code == 1);
    CHECK(run({"sweep", "--config-file", "/nonexistent/cfg.json"}).code == 1);
    CHECK(run({"sweep", "--tau-points", "3", "--out", "/nonexistent/dir/out.csv"}).code == 1);

    const auto r = run({"sweep", "--g", "0"});
    CHECK(r.code == 1);
    CHECK_THAT(r.err, ContainsSubstring("g_values"));
}
