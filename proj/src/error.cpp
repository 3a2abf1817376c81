#include "eprime/error.hpp"

namespace eprime {

std::string Pos::str() const
{
    return std::to_string(line) + ":" + std::to_string(column);
}

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Lex: return "lex error";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Type: return "type error";
    case ErrorKind::Instance: return "instance error";
    case ErrorKind::Where: return "where violation";
    case ErrorKind::Expand: return "expansion error";
    case ErrorKind::Overflow: return "arithmetic overflow";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

namespace {
    std::string format_message(ErrorKind kind, Pos pos, const std::string& message)
    {
        std::string out = to_string(kind);
        if (pos.valid())
            out += " at " + pos.str();
        out += ": " + message;
        return out;
    }
}

Error::Error(ErrorKind kind, Pos pos, const std::string& message) :
    std::runtime_error(format_message(kind, pos, message)),
    kind_(kind),
    pos_(pos),
    detail_(message)
{
}

void fail(ErrorKind kind, Pos pos, const std::string& message)
{
    throw Error(kind, pos, message);
}

} // namespace eprime
