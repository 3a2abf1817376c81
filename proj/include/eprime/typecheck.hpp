#pragma once

#include "eprime/ast.hpp"
#include "eprime/interval.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace eprime {

enum class Category { Decision, Quantifier, Parameter, Constant };

[[nodiscard]] const char* to_string(Category c);

struct Symbol {
    std::string name;
    Category category = Category::Constant;
    Type type;
    bool is_domain = false; ///< introduced by `letting NAME be domain`
    Pos pos;
};

/// Scoped identifier table. The outermost scope holds model declarations;
/// quantifier and comprehension variables live in inner scopes.
class TypeEnv {
public:
    TypeEnv() { scopes_.emplace_back(); }

    void push() { scopes_.emplace_back(); }
    void pop() { scopes_.pop_back(); }

    /// Global declarations must be unique; inner scopes may shadow.
    void declare(Symbol sym);
    [[nodiscard]] const Symbol* lookup(const std::string& name) const;
    [[nodiscard]] std::size_t depth() const { return scopes_.size(); }

private:
    std::vector<std::unordered_map<std::string, Symbol>> scopes_;
};

/// A given, letting, letting-domain or find, in source order.
struct Declaration {
    StmtKind kind = StmtKind::Given;
    std::string name;
    Pos pos;
    DomainPtr domain; ///< absent for a letting without declared domain
    ExprPtr value;    ///< Letting only
    Type type;
};

struct Objective {
    ExprPtr expr;
    bool maximising = false;
    Pos pos;
};

struct TypedModel {
    std::vector<Declaration> decls;
    std::vector<ExprPtr> wheres;
    std::optional<Objective> objective;
    std::vector<ExprPtr> branching;
    std::optional<std::string> heuristic;
    Pos heuristic_pos;
    std::vector<ExprPtr> constraints;
    TypeEnv env;

    [[nodiscard]] bool has_givens() const;
    [[nodiscard]] const Declaration* declaration(const std::string& name) const;
};

[[nodiscard]] TypedModel check_model(const SourceModel& m);

/// Types one expression against an environment. Used for parameter values
/// and by tests; the result carries `type` and `decision` annotations.
[[nodiscard]] ExprPtr check_expression(const Expr& e, TypeEnv& env);

/// Types a domain, returning the annotated tree and the type of its values.
[[nodiscard]] DomainPtr check_domain(const DomainAst& d, TypeEnv& env, Type* value_type = nullptr);

/// Wraps a bool-typed expression in an int conversion; other types pass through.
[[nodiscard]] ExprPtr coerce_bool_to_int(ExprPtr e);

/// Sound inclusive bounds of an int-typed expression, given bounds for the
/// identifiers it mentions. Unknown identifiers are unbounded.
[[nodiscard]] Interval infer_bounds(const Expr& e, const std::unordered_map<std::string, Interval>& bounds);

} // namespace eprime
