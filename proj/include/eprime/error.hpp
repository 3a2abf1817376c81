#pragma once

#include <stdexcept>
#include <string>

namespace eprime {

struct Pos {
    int line = 0;
    int column = 0;

    [[nodiscard]] bool valid() const { return line > 0; }
    [[nodiscard]] std::string str() const;
};

enum class ErrorKind {
    Lex,
    Syntax,
    Type,
    Instance,
    Where,
    Expand,
    Overflow,
    Internal,
};

[[nodiscard]] const char* to_string(ErrorKind kind);

/// All diagnostics raised by the toolchain. The message is prefixed with the
/// error kind and, when known, the source position.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, Pos pos, const std::string& message);

    [[nodiscard]] ErrorKind kind() const { return kind_; }
    [[nodiscard]] Pos pos() const { return pos_; }
    [[nodiscard]] const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    Pos pos_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, Pos pos, const std::string& message);

} // namespace eprime
