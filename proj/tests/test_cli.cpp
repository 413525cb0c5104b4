#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polyspec/cli.hpp"

using namespace polyspec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("eigs writes value,multiplicity rows") {
    const std::string out = "polyspec_cli_eigs.csv";
    CHECK(cli::run({"--out", out, "eigs", "--shape", "rect", "--a", "pi", "--b", "pi", "--lambda-max", "10"}) ==
          cli::kExitOk);
    CHECK(slurp(out) == "value,multiplicity\n2,1\n5,2\n8,1\n10,2\n");
    std::remove(out.c_str());
}

TEST_CASE("det, zeta, heat and torus run") {
    const std::string out = "polyspec_cli_out.txt";
    CHECK(cli::run({"--out", out, "det", "--shape", "equilateral", "--l", "1"}) == cli::kExitOk);
    CHECK(slurp(out).find("\"agree\": true") != std::string::npos);
    CHECK(cli::run({"--out", out, "zeta", "--shape", "square", "--s", "2,3"}) == cli::kExitOk);
    CHECK(slurp(out).rfind("s,value,error_bound,method\n", 0) == 0);
    CHECK(cli::run({"--out", out, "--format", "json", "heat", "--shape", "hemi", "--t-grid", "0.05:0.5:4"}) ==
          cli::kExitOk);
    CHECK(slurp(out).find("\"tail_bound\"") != std::string::npos);
    CHECK(cli::run({"--out", out, "torus", "--lattice", "1,0,0.5,0.8660254037844386", "--t-grid", "0.05,0.5"}) ==
          cli::kExitOk);
    CHECK(cli::run({"--out", out, "ngon-limit", "--n", "3..10"}) == cli::kExitOk);
    CHECK(cli::run({"--out", out, "remainder-fit", "--shape", "square", "--summary", out + ".json"}) == cli::kExitOk);
    CHECK(slurp(out + ".json").find("\"c_hat\"") != std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".json").c_str());
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli::run({}) == cli::kExitUsage);
    CHECK(cli::run({"det", "--shape", "circle"}) == cli::kExitUsage);
    CHECK(cli::run({"zeta", "--shape", "square", "--s", "1"}) == cli::kExitUsage);
    CHECK(cli::run({"eigs", "--shape", "square", "--lambda-max", "abc"}) == cli::kExitUsage);
    CHECK(cli::run({"heat", "--shape", "rect", "--a", "1"}) == cli::kExitUsage);
    CHECK(cli::run({"--help"}) == cli::kExitOk);
}

TEST_CASE("config files supply defaults") {
    const std::string cfg = "polyspec_cli.toml", out = "polyspec_cli_cfg.csv";
    {
        std::ofstream f(cfg);
        f << "out = \"" << out << "\"\n[eigs]\nshape = \"isosceles\"\na = \"pi\"\nlambda-max = 10\n";
    }
    CHECK(cli::run({"--config", cfg, "eigs"}) == cli::kExitOk);
    CHECK(slurp(out) == "value,multiplicity\n5,1\n10,1\n");
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}
