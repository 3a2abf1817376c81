#pragma once

#include "eprime/flat.hpp"
#include "eprime/interval.hpp"
#include "eprime/term.hpp"

#include <map>
#include <unordered_map>

namespace eprime {

/// Lowers terms onto a FlatCSP. Nested integer expressions become auxiliary
/// variables whose domains come from interval bounds of their inputs.
class Flattener {
public:
    explicit Flattener(FlatCSP& csp) : csp_(csp) {}

    /// Position used in the names of auxiliary variables created next.
    void set_origin(Pos p) { origin_ = p; }

    /// Posts a boolean term as a hard constraint.
    void post(const TermPtr& t);
    /// Literal equivalent to a boolean term.
    [[nodiscard]] Lit reify(const TermPtr& t);
    /// Variable equal to an integer (or boolean) term.
    [[nodiscard]] int as_var(const TermPtr& t);

    [[nodiscard]] Interval bounds_of(int var) const;

    struct Lin {
        std::vector<std::pair<int, __int128>> terms;
        __int128 c = 0;
    };

private:
    FlatCSP& csp_;
    Pos origin_;
    int true_var_ = -1;
    std::map<std::int64_t, int> consts_;
    std::unordered_map<const Term*, Lit> lit_memo_;
    std::unordered_map<const Term*, int> var_memo_;
    std::vector<TermPtr> keep_;

    Lin linear(const TermPtr& t);
    Interval bounds(const Lin& l) const;
    int aux(Interval b, bool is_bool = false);
    int constant(std::int64_t v);
    Lit constant_lit(bool b);
    [[nodiscard]] std::optional<bool> lit_value(const Lit& l) const;

    void post_linear(Lin l, LinRel rel);
    Lit reify_linear(Lin l, LinRel rel);
    void post_clause(std::vector<Lit> lits);
    void post_global(const Term& t);
    void restrict(int var, const IntDomain& allowed);
    int functional(FlatKind kind, std::vector<int> inputs, Interval out);
    std::vector<int> vars_of(const std::vector<TermPtr>& ts, std::size_t from, std::size_t to);
};

} // namespace eprime
