#pragma once

#include "eprime/ast.hpp"
#include "eprime/value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eprime {

inline constexpr std::uint64_t default_enum_cap = 1'000'000;

/// Ground bindings of a model instance: parameters, lettings and the
/// evaluated domains of lettings and finds.
struct Instance {
    std::unordered_map<std::string, Value> values;
    std::unordered_map<std::string, Domain> domains;      ///< `letting NAME be domain`
    std::unordered_map<std::string, Domain> find_domains; ///< evaluated find domains
    std::uint64_t enum_cap = default_enum_cap;
};

/// Evaluation scope: quantifier variables over an instance.
class Env {
public:
    explicit Env(const Instance& inst) : inst_(&inst) {}

    [[nodiscard]] const Instance& instance() const { return *inst_; }
    [[nodiscard]] std::uint64_t enum_cap() const { return inst_->enum_cap; }

    void push(std::string name, Value v) { locals_.emplace_back(std::move(name), std::move(v)); }
    void pop(std::size_t n = 1) { locals_.resize(locals_.size() - n); }

    [[nodiscard]] const Value* lookup(const std::string& name) const;
    [[nodiscard]] bool is_local(const std::string& name) const;
    [[nodiscard]] const Domain* lookup_domain(const std::string& name) const;

private:
    const Instance* inst_;
    std::vector<std::pair<std::string, Value>> locals_;
};

/// Evaluates a non-decision expression. nullopt means UNDEFINED; boolean
/// expressions are never undefined since an undefined operand makes them
/// false. Nodes marked total yield 0 / false instead of UNDEFINED.
/// Throws on 64-bit overflow.
[[nodiscard]] std::optional<Value> eval_ground(const Expr& e, Env& env);
[[nodiscard]] bool eval_bool(const Expr& e, Env& env);

/// Evaluates a domain; nullopt when a bound is undefined.
[[nodiscard]] std::optional<Domain> eval_domain(const DomainAst& d, Env& env);

/// Calls `f` once per binding of `vars` over `dom` (nested loops, leftmost
/// outermost), pushing the bindings onto `env`. Stops early when `f` returns false.
template <class F>
bool for_each_binding(Env& env, const std::vector<std::string>& vars, const std::vector<Value>& dom, F&& f, std::size_t k = 0)
{
    if (k == vars.size())
        return f();
    for (const auto& v : dom) {
        env.push(vars[k], v);
        bool go = for_each_binding(env, vars, dom, f, k + 1);
        env.pop();
        if (!go)
            return false;
    }
    return true;
}

/// Enumerates the values of a quantifier or generator domain, rejecting
/// undefined and open domains.
[[nodiscard]] std::optional<std::vector<Value>> enumerate_binder_domain(const DomainAst& d, Env& env, Pos pos);

/// Index domain for `count` comprehension elements under an optional
/// declared index domain (which may be open above).
[[nodiscard]] Domain comprehension_index(const std::optional<Domain>& declared, std::size_t count, Pos pos);

/// Integer key of a scalar used as an index into `dim`; bool-indexed
/// dimensions accept only booleans.
[[nodiscard]] std::int64_t index_key(const Domain& dim, const Value& v, Pos pos);

/// Value with bool elements converted when the expected base is int.
[[nodiscard]] Value coerce_value(const Value& v, BaseType base);

} // namespace eprime
