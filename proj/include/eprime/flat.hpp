#pragma once

#include "eprime/domain.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eprime {

struct FlatVar {
    std::string name;
    IntDomain dom; ///< bool variables use {0,1}
    bool is_bool = false;
    bool is_aux = false;
};

/// A boolean variable or its negation.
struct Lit {
    int var = -1;
    bool neg = false;

    [[nodiscard]] Lit operator!() const { return {var, !neg}; }
    friend bool operator==(const Lit&, const Lit&) = default;
};

enum class LinRel { Eq, Ne, Le };

enum class FlatKind {
    Linear,        ///< sum coefs[i]*vars[i] rel rhs, optionally reified
    Times,         ///< vars = {x, y, z}: z = x*y
    Div,           ///< z = x/y (floor; 0 when y = 0)
    Mod,           ///< z = x%y (0 when y = 0)
    Pow,           ///< z = x**y (0 when undefined)
    Abs,           ///< vars = {x, z}: z = |x|
    Min,           ///< vars = {x1..xn, z}
    Max,
    Clause,        ///< disjunction of lits
    InSet,         ///< vars[0] in set, optionally reified
    AllDiff,
    AllDiffExcept, ///< vals[0] may repeat
    Gcc,           ///< vars[0..split) X, then one count variable per vals[i]
    AtLeast,       ///< occurrences of vals[i] >= counts[i]
    AtMost,
    Table,
    Lex,           ///< vars[0..split) <=lex (or <lex) vars[split..)
};

struct FlatConstraint {
    FlatKind kind = FlatKind::Linear;
    std::vector<int> vars;
    std::vector<std::int64_t> coefs;
    LinRel rel = LinRel::Eq;
    std::int64_t rhs = 0;
    std::optional<Lit> reif;
    std::vector<Lit> lits;
    IntDomain set;
    std::vector<std::int64_t> vals;
    std::vector<std::int64_t> counts;
    std::vector<std::vector<std::int64_t>> tuples;
    std::size_t split = 0;
    bool strict = false;
};

/// A `find` declaration and the solver variables that implement it, in
/// row-major order for matrices.
struct DecisionGroup {
    std::string name;
    Domain domain;
    std::vector<int> vars;
};

struct FlatObjective {
    bool maximise = false;
    int var = -1;
};

struct FlatCSP {
    std::vector<FlatVar> vars;
    std::vector<FlatConstraint> constraints;
    std::vector<DecisionGroup> decisions;
    std::optional<FlatObjective> objective;
    std::vector<int> branch_order;
    std::string heuristic = "static";
    bool trivially_unsat = false;
    std::vector<std::string> notes;

    int add_var(std::string name, IntDomain dom, bool is_bool, bool is_aux);
    [[nodiscard]] std::size_t decision_count() const;

    /// Line-oriented text form: one variable or constraint per line.
    [[nodiscard]] std::string dump() const;
};

[[nodiscard]] const char* to_string(FlatKind k);

} // namespace eprime
