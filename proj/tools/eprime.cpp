#include "eprime/driver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Solve an Essence' constraint model."};
    app.footer("Exit status: 0 solved, 1 no solution, 2 error, 3 search limit reached without a solution.\n"
               "Optimisation always returns the true optimum over all decision variables, even when a\n"
               "branching-on list is given; a note is printed in that case.\n"
               "EPRIME_ENUM_CAP overrides the limit on values enumerated from matrix domains.");

    eprime::RunConfig cfg;
    std::string param;
    std::uint64_t all_cap = 0;
    bool check_only = false, dump_flat = false;
    app.add_option("model", cfg.model_path, "model file")->required();
    app.add_option("-p,--param", param, "parameter file");
    auto* all = app.add_option("-a,--all-solutions", all_cap, "print every solution, or at most N")->expected(0, 1);
    app.add_flag("--check-only", check_only, "parse and type-check only");
    app.add_flag("--dump-flat", dump_flat, "print the flattened constraint problem");
    app.add_option("--node-limit", cfg.node_limit, "stop after this many search nodes");
    app.add_option("--time-limit", cfg.time_limit, "stop after this many seconds");
    CLI11_PARSE(app, argc, argv);

    if (!param.empty())
        cfg.param_path = param;
    if (check_only)
        cfg.mode = eprime::RunMode::CheckOnly;
    else if (dump_flat)
        cfg.mode = eprime::RunMode::DumpFlat;
    else if (all->count() > 0) {
        cfg.mode = eprime::RunMode::AllSolutions;
        cfg.solution_cap = all_cap;
    }
    if (const char* cap = std::getenv("EPRIME_ENUM_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(cap, &end, 10);
        if (!*cap || *end || v == 0) {
            std::cerr << "EPRIME_ENUM_CAP must be a positive integer\n";
            return eprime::exit_code::error;
        }
        cfg.enum_cap = v;
    }
    return eprime::run(cfg);
}
