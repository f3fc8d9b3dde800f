#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "tfl/config.hpp"
#include "tfl/suite.hpp"

using namespace tfl;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(TFLAB_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch_dir()
{
    auto d = std::filesystem::temp_directory_path() / "tflab_cli_test";
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("config parsing")
{
    const ExperimentConfig c = parse_config("[grid]\nn = 513\n[solver]\ndt = 0.02\nlambda = 1, 2.5\n");
    CHECK(c.n == 513);
    CHECK(c.dt == 0.02);
    CHECK(c.lambda == std::vector<double>{1.0, 2.5});
    CHECK(c.s_min == -12.0);
}

TEST_CASE("unknown and malformed keys name the key")
{
    try {
        parse_config("[grid]\nresolution = 3\n");
        FAIL("accepted an unknown key");
    } catch (const ConfigError& e) {
        CHECK(e.key == "grid.resolution");
    }
    try {
        parse_config("[solver]\ndt = fast\n");
        FAIL("accepted a malformed value");
    } catch (const ConfigError& e) {
        CHECK(e.key == "solver.dt");
    }
    CHECK_THROWS_AS(parse_config("[norms]\ndelta = 0.7\n"), ConfigError);
}

TEST_CASE("echo round-trips and hashes deterministically")
{
    ExperimentConfig c;
    c.alpha = {0.25, 1.25};
    c.snapshot_times = {0.5};
    const std::string text = echo(c);
    CHECK(echo(parse_config(text)) == text);
    CHECK(git_blob_hash(text) == git_blob_hash(echo(parse_config(text))));
    c.n = 2049;
    CHECK(git_blob_hash(echo(c)) != git_blob_hash(text));
}

TEST_CASE("git object hash")
{
    // git hash-object on a file holding "hello\n"
    CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
    CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_CASE("oracle suite passes")
{
    CHECK(suite_passed(oracle_suite()));
}

TEST_CASE("exit codes")
{
    const auto dir = scratch_dir();
    const auto bad = dir / "bad.ini";
    std::ofstream(bad) << "[grid]\nbogus = 1\n";
    CHECK(run_cli("linear-evolve --config " + bad.string()) == 1);
    CHECK(run_cli("coercivity --set solver.dt=-1") == 1);
    CHECK(run_cli("validate") == 0);
    // the guard trips on a perturbation far outside the small-data regime
    CHECK(run_cli("nonlinear-evolve --set nonlinear.epsilon=5 --set output.dir=" + dir.string()) == 3);
    CHECK(run_cli("coercivity --json") == 0);
}

TEST_CASE("zero perturbation gives a zero trajectory")
{
    const auto dir = scratch_dir();
    REQUIRE(run_cli("nonlinear-evolve --set nonlinear.epsilon=0 --set solver.T=0.1 --set output.prefix=zero "
                    "--set output.dir=" + dir.string()) == 0);
    std::ifstream f(dir / "zero_nonlinear.csv");
    std::string line;
    int rows = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        ++rows;
        // t, init_norm, u1, u2, sup_vx, Y0, picard
        std::stringstream ss(line);
        std::vector<double> v;
        for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 7);
        CHECK(v[1] == 0.0);
        CHECK(v[2] == 0.0);
        CHECK(v[3] == 0.0);
        CHECK(v[4] == 0.0);
        CHECK(v[5] == doctest::Approx(6.0 * v[0]));
    }
    CHECK(rows == 11);
}

TEST_CASE("sweep reports a Richardson order")
{
    const auto dir = scratch_dir();
    CHECK(run_cli("sweep --param dt --values 0.04,0.02,0.01 --set solver.T=0.5 --set grid.n=513 --set output.dir=" +
                  dir.string()) == 0);
    CHECK(run_cli("sweep --param grid.bogus --values 1,2 --set output.dir=" + dir.string()) == 1);
}
