#include "harness.hpp"

#include "eprime/expand.hpp"
#include "eprime/instance.hpp"
#include "eprime/parser.hpp"
#include "reference.hpp"

#include <functional>
#include <stdexcept>

namespace oracle {

using namespace eprime;

BruteResult brute_force(const std::string& model_text)
{
    auto src = parse_model_text(model_text);
    Reference ref;
    std::vector<std::pair<std::string, std::vector<RVal>>> finds;
    std::vector<ExprPtr> constraints;
    ExprPtr objective;
    BruteResult out;
    for (const auto& s : src.statements) {
        if (s.kind == StmtKind::Find) {
            auto vals = ref.domain_values(*s.domain);
            if (!vals)
                throw std::runtime_error("brute force: undefined find domain");
            for (const auto& n : s.names)
                finds.emplace_back(n, *vals);
        }
        else if (s.kind == StmtKind::SuchThat)
            constraints.insert(constraints.end(), s.exprs.begin(), s.exprs.end());
        else if (s.kind == StmtKind::Objective) {
            objective = s.expr;
            out.maximising = s.maximising;
            out.has_objective = true;
        }
    }
    std::function<void(std::size_t, Tuple&)> rec = [&](std::size_t k, Tuple& t) {
        if (k == finds.size()) {
            for (const auto& c : constraints)
                if (!ref.truth(*c))
                    return;
            out.solutions.insert(t);
            if (objective) {
                auto v = ref.eval(*objective);
                if (!v)
                    throw std::runtime_error("brute force: undefined objective");
                out.objective[t] = v->as_int();
            }
            return;
        }
        for (const auto& v : finds[k].second) {
            ref.globals[finds[k].first] = v;
            std::size_t mark = t.size();
            if (v.k == RVal::K::Mat)
                for (const auto& e : v.elems)
                    t.push_back(e.as_int());
            else
                t.push_back(v.as_int());
            rec(k + 1, t);
            t.resize(mark);
        }
    };
    Tuple t;
    rec(0, t);
    return out;
}

Tuple project(const FlatCSP& csp, const Assignment& a)
{
    Tuple t;
    for (const auto& g : csp.decisions)
        for (int v : g.vars)
            t.push_back(a[static_cast<std::size_t>(v)]);
    return t;
}

std::optional<Value> ground(const std::string& text)
{
    auto e = parse_expression_text(text);
    TypeEnv tenv;
    auto typed = check_expression(*e, tenv);
    Instance inst;
    Env env(inst);
    return eval_ground(*typed, env);
}

Compiled compile(const std::string& model_text, const std::optional<std::string>& param_text)
{
    auto src = parse_model_text(model_text);
    Compiled c{check_model(src), {}};
    std::optional<SourceModel> params;
    if (param_text)
        params = parse_param_text(*param_text);
    auto inst = bind_parameters(c.model, params ? &*params : nullptr);
    c.csp = flatten_model(c.model, inst);
    return c;
}

SearchOutcome run_mode(const FlatCSP& csp, SolveMode mode)
{
    SolverConfig cfg;
    cfg.mode = mode;
    return mode == SolveMode::Optimize ? optimize(csp, cfg) : solve(csp, cfg);
}

LibraryResult library_all(const std::string& model_text)
{
    auto csp = compile(model_text).csp;
    SolverConfig cfg;
    cfg.mode = SolveMode::All;
    auto res = solve(csp, cfg);
    LibraryResult out;
    out.status = res.status;
    for (const auto& a : res.solutions) {
        out.verified = out.verified && verify_solution(csp, a);
        out.solutions.insert(project(csp, a));
    }
    if (out.solutions.size() != res.solutions.size())
        out.verified = false; // duplicates
    return out;
}

LibraryResult library_optimize(const std::string& model_text)
{
    auto csp = compile(model_text).csp;
    SolverConfig cfg;
    cfg.mode = SolveMode::Optimize;
    auto res = optimize(csp, cfg);
    LibraryResult out;
    out.status = res.status;
    out.objective = res.objective;
    if (res.status == SolveStatus::Optimal || res.status == SolveStatus::Sat) {
        out.verified = verify_solution(csp, res.assignment);
        out.best = project(csp, res.assignment);
    }
    return out;
}

bool sudoku_valid(const std::vector<std::vector<std::int64_t>>& grid, const std::vector<std::vector<std::int64_t>>& clues)
{
    if (grid.size() != 9)
        return false;
    for (std::size_t r = 0; r < 9; ++r) {
        if (grid[r].size() != 9)
            return false;
        for (std::size_t c = 0; c < 9; ++c) {
            if (grid[r][c] < 1 || grid[r][c] > 9)
                return false;
            if (clues[r][c] != 0 && clues[r][c] != grid[r][c])
                return false;
        }
    }
    for (std::size_t u = 0; u < 9; ++u) {
        unsigned row = 0, col = 0, box = 0;
        for (std::size_t k = 0; k < 9; ++k) {
            row |= 1u << grid[u][k];
            col |= 1u << grid[k][u];
            box |= 1u << grid[3 * (u / 3) + k / 3][3 * (u % 3) + k % 3];
        }
        if (row != 0x3FE || col != 0x3FE || box != 0x3FE)
            return false;
    }
    return true;
}

} // namespace oracle
