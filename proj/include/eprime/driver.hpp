#pragma once

#include "eprime/expand.hpp"
#include "eprime/solver.hpp"
#include "eprime/typecheck.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace eprime {

enum class RunMode { Solve, AllSolutions, CheckOnly, DumpFlat };

struct RunConfig {
    std::string model_path;
    std::optional<std::string> param_path;
    RunMode mode = RunMode::Solve;
    std::uint64_t solution_cap = 0; ///< AllSolutions: 0 means every solution
    std::uint64_t node_limit = 0;
    double time_limit = 0;
    std::uint64_t enum_cap = default_enum_cap;
    std::ostream* out = nullptr; ///< defaults to std::cout
    std::ostream* err = nullptr; ///< defaults to std::cerr
};

/// Exit statuses of run().
namespace exit_code {
    inline constexpr int solved = 0;
    inline constexpr int unsat = 1;
    inline constexpr int error = 2;
    inline constexpr int limit = 3;
}

/// Parse, check, instantiate, expand, solve and print.
int run(const RunConfig& cfg);

/// Same pipeline over in-memory texts; `param_text` may be empty when the model has no givens.
int run_text(const std::string& model_text, const std::optional<std::string>& param_text, const RunConfig& cfg);

/// Values of every find in one assignment.
[[nodiscard]] std::vector<std::pair<std::string, Value>> decision_values(const FlatCSP& csp, const Assignment& a);

/// `letting` lines for every find, in declaration order. Matrices with two or
/// more dimensions are written one row per line.
[[nodiscard]] std::string print_solution(const SearchOutcome& outcome, const FlatCSP& csp, const TypedModel& model);
[[nodiscard]] std::string print_assignment(const FlatCSP& csp, const Assignment& a);

/// Literal text of a value; rows of multi-dimensional matrices on separate lines.
[[nodiscard]] std::string render_value(const Value& v, std::size_t indent = 0);

} // namespace eprime
