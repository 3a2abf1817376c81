#pragma once

#include "eprime/error.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eprime {

enum class TokenKind {
    Keyword,
    Identifier,
    Integer,
    Operator,
    Punctuation,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    Pos pos;
    std::int64_t value = 0; ///< only meaningful for Integer tokens

    [[nodiscard]] bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    [[nodiscard]] bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
    [[nodiscard]] bool is_op(std::string_view t) const { return is(TokenKind::Operator, t); }
    [[nodiscard]] bool is_punct(std::string_view t) const { return is(TokenKind::Punctuation, t); }
    [[nodiscard]] bool is_ident(std::string_view t) const { return is(TokenKind::Identifier, t); }
};

/// Words that can never be identifiers.
[[nodiscard]] std::span<const std::string_view> reserved_words();
[[nodiscard]] bool is_reserved(std::string_view word);

/// Splits source text into tokens. Comments (`$` to end of line) and
/// whitespace are dropped; the list does not include an End token.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source);

} // namespace eprime
