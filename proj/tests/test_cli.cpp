#include "eprime/driver.hpp"
#include "eprime/instance.hpp"
#include "eprime/parser.hpp"
#include "generate.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

using namespace eprime;

namespace {

const std::string header = "language ESSENCE' 1.0\n";

struct Run {
    int code = -1;
    std::string out, err;
};

Run run_model(const std::string& model, const std::optional<std::string>& params = std::nullopt, RunMode mode = RunMode::Solve,
    std::uint64_t node_limit = 0)
{
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.mode = mode;
    cfg.node_limit = node_limit;
    cfg.out = &out;
    cfg.err = &err;
    Run r;
    r.code = run_text(model, params, cfg);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch(const std::string& name, const std::string& text)
{
    auto dir = std::filesystem::temp_directory_path() / "eprime_cli_test";
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::ofstream(p) << text;
    return p;
}

int shell(const std::string& cmd)
{
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

} // namespace

TEST_CASE("exit statuses")
{
    CHECK(run_model(header + "find x : int(1..3)\nsuch that x > 1").code == exit_code::solved);
    auto unsat = run_model(header + "find x : int(1..3)\nsuch that x > 3");
    CHECK(unsat.code == exit_code::unsat);
    CHECK(unsat.out.find("no solution") != std::string::npos);

    auto where = run_model(header + "given n : int\nwhere n > 3\nfind x : int(1..n)\n", header + "letting n = 2\n");
    CHECK(where.code == exit_code::error);
    CHECK(where.err.find("where") != std::string::npos);
    CHECK(where.err.find("3:") != std::string::npos);

    CHECK(run_model(header + "find x : int(1..3)\nsuch that x +").code == exit_code::error);
    CHECK(run_model(header + "find x : int(1..3)\nsuch that y = 1").code == exit_code::error);
    CHECK(run_model(header + "given n : int\nfind x : int(1..3)\n").code == exit_code::error);

    // pigeonhole: no solution exists, and the node limit stops the proof early
    std::string hole = header + "find x : matrix indexed by [int(1..9)] of int(1..8)\n"
                                "such that forAll i, j : int(1..9) . i < j -> x[i] != x[j]\n";
    CHECK(run_model(hole, std::nullopt, RunMode::Solve, 3).code == exit_code::limit);
}

TEST_CASE("check-only mode")
{
    auto a = run_model(header + "find x : int(1..3)\nsuch that x > 5", std::nullopt, RunMode::CheckOnly);
    CHECK(a.code == exit_code::solved);
    CHECK(a.out == "$ model is well-formed\n");
    auto b = run_model(header + "given n : int\nfind x : int(1..n)\n", header + "letting n = 4\n", RunMode::CheckOnly);
    CHECK(b.code == exit_code::solved);
    CHECK(b.out == "$ model and parameters are well-formed\n");
    CHECK(run_model(header + "find x : int(1..3)\nsuch that x", std::nullopt, RunMode::CheckOnly).code == exit_code::error);
}

TEST_CASE("solution format")
{
    auto r = run_model(header + "find M : matrix indexed by [int(1..2), int(1..3)] of int(1..1)\n"
                                "find m : matrix indexed by [int(1..2)] of bool\nfind x : int(3..5)\n"
                                "such that m[1], !m[2]\nminimising x\n");
    REQUIRE(r.code == exit_code::solved);
    CHECK(r.out == header
            + "letting M = [[1, 1, 1 ; int(1..3)],\n"
              "             [1, 1, 1 ; int(1..3)]\n"
              "             ; int(1..2)]\n"
              "letting m = [true, false ; int(1..2)]\n"
              "letting x = 3\n"
              "$ objective: 3\n");

    auto all = run_model(header + "find x : int(1..3)\n", std::nullopt, RunMode::AllSolutions);
    CHECK(all.code == exit_code::solved);
    CHECK(all.out.find("$ solutions: 3") != std::string::npos);
    CHECK(all.out.find("letting x = 2") != std::string::npos);
}

TEST_CASE("printed solutions read back as parameters")
{
    oracle::ModelGenerator gen(71);
    int solved = 0;
    for (int t = 0; t < 400; ++t) {
        std::string model = gen.model();
        INFO(model);
        auto r = run_model(model);
        REQUIRE(r.code != exit_code::error);
        REQUIRE(r.code != exit_code::limit);
        // the same text every time
        REQUIRE(run_model(model).out == r.out);
        if (r.code != exit_code::solved)
            continue;
        ++solved;
        std::string as_given = std::regex_replace(model, std::regex("(^|\n)find "), "$1given ");
        as_given = std::regex_replace(as_given, std::regex("such that"), "where");
        auto checked = check_model(parse_model_text(as_given));
        auto params = parse_param_text(r.out);
        REQUIRE_NOTHROW(bind_parameters(checked, &params));
    }
    CHECK(solved > 50);
}

TEST_CASE("command line tool")
{
    auto ok = scratch("ok.eprime", header + "find x : int(1..3)\nsuch that x > 2\n");
    auto bad = scratch("bad.eprime", header + "find x : int(1..3)\nsuch that x > 3\n");
    auto out = std::filesystem::temp_directory_path() / "eprime_cli_test" / "out.txt";
    std::string cli = EPRIME_CLI;
    CHECK(shell(cli + " " + ok.string() + " > " + out.string()) == exit_code::solved);
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == header + "letting x = 3\n");
    CHECK(shell(cli + " " + bad.string() + " > /dev/null") == exit_code::unsat);
    CHECK(shell(cli + " " + ok.string() + " --check-only > /dev/null") == exit_code::solved);
    CHECK(shell(cli + " missing.eprime > /dev/null 2>&1") == exit_code::error);
    CHECK(shell(cli + " " + ok.string() + " --no-such-flag > /dev/null 2>&1") != exit_code::solved);

    auto sudoku = std::string(EPRIME_TEST_DATA) + "/sudoku.eprime";
    auto param = std::string(EPRIME_TEST_DATA) + "/sudoku_17.param";
    CHECK(shell(cli + " " + sudoku + " -p " + param + " > /dev/null") == exit_code::solved);
    CHECK(shell(cli + " " + sudoku + " > /dev/null 2>&1") == exit_code::error);
}
