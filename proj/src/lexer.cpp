#include "eprime/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

namespace eprime {

namespace {
    constexpr std::array<std::string_view, 18> reserved_list = {
        "forall", "forAll", "exists", "sum",
        "such", "that", "letting", "given", "where", "find", "language",
        "int", "bool", "union", "intersect", "in", "false", "true"};

    // Longest first so a linear scan implements maximal munch.
    constexpr std::array<std::string_view, 26> operator_list = {
        "<=lex", ">=lex", "<lex", ">lex",
        "<->", "**", "!=", "<=", ">=", "->", "/\\", "\\/",
        "+", "-", "*", "/", "%", "|", "!", "=", "<", ">",
        "(", ")", "[", "]"};

    bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
    bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
    bool is_lex_op(std::string_view op) { return op.size() > 3 && op.substr(op.size() - 3) == "lex"; }

    class Lexer {
    public:
        explicit Lexer(std::string_view src) : src_(src) {}

        std::vector<Token> run()
        {
            std::vector<Token> out;
            while (skip_blank(), at_ < src_.size()) {
                Pos pos{line_, col_};
                char c = src_[at_];
                if (is_ident_start(c))
                    out.push_back(word(pos));
                else if (std::isdigit(static_cast<unsigned char>(c)) != 0)
                    out.push_back(number(pos));
                else
                    out.push_back(symbol(pos));
            }
            return out;
        }

    private:
        std::string_view src_;
        std::size_t at_ = 0;
        int line_ = 1;
        int col_ = 1;

        void advance(std::size_t n = 1)
        {
            for (std::size_t i = 0; i < n && at_ < src_.size(); ++i) {
                if (src_[at_] == '\n') {
                    ++line_;
                    col_ = 1;
                }
                else
                    ++col_;
                ++at_;
            }
        }

        void skip_blank()
        {
            while (at_ < src_.size()) {
                char c = src_[at_];
                if (c == '$') {
                    while (at_ < src_.size() && src_[at_] != '\n')
                        advance();
                }
                else if (std::isspace(static_cast<unsigned char>(c)) != 0)
                    advance();
                else
                    break;
            }
        }

        Token word(Pos pos)
        {
            std::size_t start = at_;
            while (at_ < src_.size() && is_ident_char(src_[at_]))
                advance();
            std::string text(src_.substr(start, at_ - start));
            // The language header names the language ESSENCE' with a trailing prime.
            if (text == "ESSENCE" && at_ < src_.size() && src_[at_] == '\'') {
                advance();
                text += '\'';
            }
            Token t;
            t.kind = is_reserved(text) ? TokenKind::Keyword : TokenKind::Identifier;
            t.text = std::move(text);
            t.pos = pos;
            return t;
        }

        Token number(Pos pos)
        {
            std::size_t start = at_;
            while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_])) != 0)
                advance();
            std::string_view digits = src_.substr(start, at_ - start);
            std::uint64_t v = 0;
            constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
            for (char d : digits) {
                v = v * 10 + static_cast<std::uint64_t>(d - '0');
                if (v > limit)
                    fail(ErrorKind::Lex, pos, "integer literal out of 64-bit range: " + std::string(digits));
            }
            if (at_ < src_.size() && is_ident_start(src_[at_]))
                fail(ErrorKind::Lex, Pos{line_, col_}, "identifier may not start with a digit");
            Token t;
            t.kind = TokenKind::Integer;
            t.text = std::string(digits);
            t.pos = pos;
            t.value = static_cast<std::int64_t>(v);
            return t;
        }

        Token symbol(Pos pos)
        {
            std::string_view rest = src_.substr(at_);
            if (rest.starts_with(".."))
                return punct("..", pos);
            for (char p : std::string_view(".,:;")) {
                if (rest.front() == p)
                    return punct(std::string(1, p), pos);
            }
            for (std::string_view op : operator_list) {
                if (!rest.starts_with(op))
                    continue;
                if (is_lex_op(op) && rest.size() > op.size() && is_ident_char(rest[op.size()]))
                    continue;
                Token t;
                t.kind = (op == "(" || op == ")" || op == "[" || op == "]") ? TokenKind::Punctuation
                                                                             : TokenKind::Operator;
                t.text = std::string(op);
                t.pos = pos;
                advance(op.size());
                return t;
            }
            fail(ErrorKind::Lex, pos, std::string("illegal character '") + rest.front() + "'");
        }

        Token punct(std::string text, Pos pos)
        {
            Token t;
            t.kind = TokenKind::Punctuation;
            advance(text.size());
            t.text = std::move(text);
            t.pos = pos;
            return t;
        }
    };
}

std::span<const std::string_view> reserved_words()
{
    return reserved_list;
}

bool is_reserved(std::string_view word)
{
    return std::find(reserved_list.begin(), reserved_list.end(), word) != reserved_list.end();
}

std::vector<Token> tokenize(std::string_view source)
{
    return Lexer(source).run();
}

} // namespace eprime
