#pragma once

#include "eprime/ast.hpp"
#include "eprime/lexer.hpp"

#include <span>
#include <string_view>

namespace eprime {

/// Parses a problem model. The first statement is always the language header.
[[nodiscard]] SourceModel parse_model(std::span<const Token> tokens);

/// Parses a parameter file: the header followed by `letting` bindings only.
[[nodiscard]] SourceModel parse_param_file(std::span<const Token> tokens);

/// Parses one expression covering all tokens. The top-level comma is accepted
/// as the lowest-precedence conjunction.
[[nodiscard]] ExprPtr parse_expression(std::span<const Token> tokens);

[[nodiscard]] DomainPtr parse_domain(std::span<const Token> tokens);

// Convenience wrappers over tokenize().
[[nodiscard]] SourceModel parse_model_text(std::string_view text);
[[nodiscard]] SourceModel parse_param_text(std::string_view text);
[[nodiscard]] ExprPtr parse_expression_text(std::string_view text);
[[nodiscard]] DomainPtr parse_domain_text(std::string_view text);

} // namespace eprime
