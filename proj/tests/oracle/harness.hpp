#pragma once

// Library pipeline and oracle side by side on a model text.

#include "eprime/flat.hpp"
#include "eprime/solver.hpp"
#include "eprime/typecheck.hpp"
#include "eprime/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Tuple = std::vector<std::int64_t>;

/// Every assignment of the finds (declaration order, matrices row-major)
/// satisfying all constraints under the reference interpreter.
struct BruteResult {
    std::set<Tuple> solutions;
    std::map<Tuple, std::int64_t> objective; ///< when the model has one
    bool maximising = false;
    bool has_objective = false;
};

BruteResult brute_force(const std::string& model_text);

struct LibraryResult {
    std::set<Tuple> solutions;
    eprime::SolveStatus status = eprime::SolveStatus::Unknown;
    std::optional<std::int64_t> objective;
    Tuple best;          ///< Optimize mode
    bool verified = true; ///< every reported assignment passed verify_solution
};

LibraryResult library_all(const std::string& model_text);
LibraryResult library_optimize(const std::string& model_text);

/// Typed ground evaluation of an expression text with no declarations in scope.
std::optional<eprime::Value> ground(const std::string& text);

struct Compiled {
    eprime::TypedModel model;
    eprime::FlatCSP csp;
};

Compiled compile(const std::string& model_text, const std::optional<std::string>& param_text = std::nullopt);

eprime::SearchOutcome run_mode(const eprime::FlatCSP& csp, eprime::SolveMode mode);

/// Decision tuple of a full solver assignment.
Tuple project(const eprime::FlatCSP& csp, const eprime::Assignment& a);

/// Row, column and box check of a completed grid against its clues (0 = blank).
bool sudoku_valid(const std::vector<std::vector<std::int64_t>>& grid, const std::vector<std::vector<std::int64_t>>& clues);

} // namespace oracle
