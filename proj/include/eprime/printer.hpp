#pragma once

#include "eprime/ast.hpp"

#include <string>

namespace eprime {

/// Fully parenthesized rendering; parsing the output yields the same tree.
[[nodiscard]] std::string to_string(const Expr& e);
[[nodiscard]] std::string to_string(const DomainAst& d);
[[nodiscard]] std::string to_string(const Statement& s);
[[nodiscard]] std::string to_string(const SourceModel& m);

/// Shape equality ignoring positions and type annotations.
[[nodiscard]] bool structurally_equal(const Expr& a, const Expr& b);
[[nodiscard]] bool structurally_equal(const DomainAst& a, const DomainAst& b);

} // namespace eprime
