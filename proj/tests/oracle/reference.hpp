#pragma once

// Naive interpreter over the untyped parse tree. Shares no code with the
// library evaluator; used as the ground truth for property tests.

#include "eprime/ast.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct RVal {
    enum class K { Int, Bool, Mat, Set };
    K k = K::Int;
    std::int64_t i = 0;
    bool b = false;
    std::vector<std::vector<std::int64_t>> keys; ///< Mat: index values per dimension
    bool base_bool = false;
    std::vector<RVal> elems; ///< Mat: scalars, row-major
    std::set<std::int64_t> set;

    static RVal integer(std::int64_t v) { RVal r; r.k = K::Int; r.i = v; return r; }
    static RVal boolean(bool v) { RVal r; r.k = K::Bool; r.b = v; return r; }
    std::int64_t as_int() const { return k == K::Bool ? (b ? 1 : 0) : i; }
    bool operator==(const RVal& o) const;
};

struct Overflow : std::runtime_error {
    Overflow() : std::runtime_error("overflow") {}
};

class Reference {
public:
    std::map<std::string, RVal> globals;

    /// nullopt is UNDEFINED (never returned for boolean expressions).
    std::optional<RVal> eval(const eprime::Expr& e);
    bool truth(const eprime::Expr& e);

    /// Values of an int or bool domain, ascending.
    std::optional<std::vector<RVal>> domain_values(const eprime::DomainAst& d);

private:
    std::vector<std::pair<std::string, RVal>> locals_;

    const RVal& lookup(const std::string& name);
    bool is_bool_node(const eprime::Expr& e);
    std::optional<std::int64_t> num(const eprime::Expr& e);
    std::optional<RVal> matrix(const eprime::Expr& e);
    std::optional<std::vector<std::int64_t>> ints(const eprime::Expr& e);
    std::optional<std::vector<std::int64_t>> keys_of(const eprime::DomainAst& d);
    bool bool_value(const eprime::Expr& e);
    std::optional<RVal> int_value(const eprime::Expr& e);
    std::optional<RVal> comprehension(const eprime::Expr& e);
    std::optional<RVal> index(const eprime::Expr& e);
};

/// Determinant by cofactor expansion.
std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& m);

} // namespace oracle
