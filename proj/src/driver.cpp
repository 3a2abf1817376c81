#include "eprime/driver.hpp"

#include "eprime/instance.hpp"
#include "eprime/parser.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace eprime {

std::vector<std::pair<std::string, Value>> decision_values(const FlatCSP& csp, const Assignment& a)
{
    std::vector<std::pair<std::string, Value>> out;
    for (const auto& g : csp.decisions) {
        auto scalar = [&](const Domain& d, int var) {
            std::int64_t x = a[static_cast<std::size_t>(var)];
            return d.is_bool() ? Value::boolean(x != 0) : Value::integer(x);
        };
        if (g.domain.is_matrix()) {
            std::vector<Value> xs;
            xs.reserve(g.vars.size());
            for (int v : g.vars)
                xs.push_back(scalar(g.domain.base(), v));
            out.emplace_back(g.name, Value::matrix(MatrixValue(g.domain.index(), std::move(xs))));
        }
        else
            out.emplace_back(g.name, scalar(g.domain, g.vars[0]));
    }
    return out;
}

std::string render_value(const Value& v, std::size_t indent)
{
    if (!v.is_matrix())
        return v.str();
    const auto& m = v.as_matrix();
    if (m.dims() < 2 || m.index[0].atomic_size() == 0)
        return v.str();
    std::string pad(indent + 1, ' ');
    std::string out = "[";
    std::size_t rows = static_cast<std::size_t>(m.index[0].atomic_size());
    for (std::size_t k = 0; k < rows; ++k) {
        if (k)
            out += ",\n" + pad;
        out += render_value(Value::matrix(m.row(k)), indent + 1);
    }
    out += "\n" + pad + "; " + m.index[0].str() + "]";
    return out;
}

std::string print_assignment(const FlatCSP& csp, const Assignment& a)
{
    std::string out;
    for (const auto& [name, value] : decision_values(csp, a)) {
        std::string head = "letting " + name + " = ";
        out += head + render_value(value, head.size()) + "\n";
    }
    if (csp.objective)
        out += "$ objective: " + std::to_string(a[static_cast<std::size_t>(csp.objective->var)]) + "\n";
    return out;
}

std::string print_solution(const SearchOutcome& outcome, const FlatCSP& csp, const TypedModel&)
{
    return print_assignment(csp, outcome.assignment);
}

namespace {
    std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            fail(ErrorKind::Instance, {}, "cannot read " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    const char* header = "language ESSENCE' 1.0\n";
}

int run_text(const std::string& model_text, const std::optional<std::string>& param_text, const RunConfig& cfg)
{
    std::ostream& out = cfg.out ? *cfg.out : std::cout;
    std::ostream& err = cfg.err ? *cfg.err : std::cerr;
    try {
        SourceModel src = parse_model_text(model_text);
        TypedModel model = check_model(src);
        std::optional<SourceModel> params;
        if (param_text)
            params = parse_param_text(*param_text);
        if (model.has_givens() && !params)
            fail(ErrorKind::Instance, {}, "the model has given parameters but no parameter file was supplied");
        if (cfg.mode == RunMode::CheckOnly && !params) {
            out << "$ model is well-formed\n";
            return exit_code::solved;
        }
        Instance inst = bind_parameters(model, params ? &*params : nullptr, cfg.enum_cap);
        if (cfg.mode == RunMode::CheckOnly) {
            out << "$ model and parameters are well-formed\n";
            return exit_code::solved;
        }
        FlatCSP csp = flatten_model(model, inst);
        if (cfg.mode == RunMode::DumpFlat) {
            out << csp.dump();
            return exit_code::solved;
        }

        SolverConfig sc;
        sc.node_limit = cfg.node_limit;
        sc.time_limit = cfg.time_limit;
        if (cfg.mode == RunMode::AllSolutions) {
            sc.mode = SolveMode::All;
            sc.solution_cap = cfg.solution_cap;
        }
        else
            sc.mode = csp.objective ? SolveMode::Optimize : SolveMode::First;
        SearchOutcome res = solve(csp, sc);

        for (const auto& n : csp.notes)
            out << "$ note: " << n << "\n";
        for (const auto& n : res.notes)
            out << "$ note: " << n << "\n";
        std::vector<Assignment> found = sc.mode == SolveMode::All ? res.solutions : std::vector<Assignment>{};
        if (sc.mode != SolveMode::All && res.status != SolveStatus::Unsat && res.status != SolveStatus::Unknown)
            found.push_back(res.assignment);
        for (const auto& a : found)
            if (!verify_solution(csp, a))
                fail(ErrorKind::Internal, {}, "solver produced an assignment that violates a constraint");

        if (sc.mode == SolveMode::All) {
            for (std::size_t k = 0; k < found.size(); ++k) {
                out << "$ solution " << (k + 1) << "\n" << header << print_assignment(csp, found[k]);
            }
            out << "$ solutions: " << found.size() << "\n";
            if (res.stats.limit_reached)
                out << "$ search limit reached; the list may be incomplete\n";
            if (!found.empty())
                return exit_code::solved;
            return res.stats.limit_reached ? exit_code::limit : exit_code::unsat;
        }
        switch (res.status) {
        case SolveStatus::Sat:
        case SolveStatus::Optimal:
            if (sc.mode == SolveMode::Optimize && res.status != SolveStatus::Optimal)
                out << "$ search limit reached; the objective value is not proven optimal\n";
            out << header << print_solution(res, csp, model);
            return exit_code::solved;
        case SolveStatus::Unsat:
            out << "$ no solution\n";
            return exit_code::unsat;
        case SolveStatus::Unknown:
            out << "$ search limit reached without finding a solution\n";
            return exit_code::limit;
        }
    }
    catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code::error;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::error;
    }
    return exit_code::error;
}

int run(const RunConfig& cfg)
{
    std::ostream& err = cfg.err ? *cfg.err : std::cerr;
    std::string model_text;
    std::optional<std::string> param_text;
    try {
        model_text = read_file(cfg.model_path);
        if (cfg.param_path)
            param_text = read_file(*cfg.param_path);
    }
    catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code::error;
    }
    return run_text(model_text, param_text, cfg);
}

} // namespace eprime
