#include "eprime/ast.hpp"

#include <algorithm>

namespace eprime {

std::string to_string(const Type& t)
{
    switch (t.kind) {
    case Type::Kind::Unknown: return "unknown";
    case Type::Kind::Int: return "int";
    case Type::Kind::Bool: return "bool";
    case Type::Kind::Set: return "set of int";
    case Type::Kind::Matrix:
        return std::to_string(t.dims) + "-dimensional matrix of " + (t.base == BaseType::Int ? "int" : "bool");
    }
    return "unknown";
}

std::size_t SourceModel::count(StmtKind kind) const
{
    return static_cast<std::size_t>(std::count_if(statements.begin(), statements.end(),
        [kind](const Statement& s) { return s.kind == kind; }));
}

namespace ast {
    namespace {
        std::shared_ptr<Expr> node(ExprKind kind, Pos pos)
        {
            auto e = std::make_shared<Expr>();
            e->kind = kind;
            e->pos = pos;
            return e;
        }
    }

    ExprPtr int_lit(std::int64_t v, Pos pos)
    {
        auto e = node(ExprKind::IntLit, pos);
        e->int_value = v;
        e->type = Type::integer();
        return e;
    }

    ExprPtr bool_lit(bool v, Pos pos)
    {
        auto e = node(ExprKind::BoolLit, pos);
        e->bool_value = v;
        e->type = Type::boolean();
        return e;
    }

    ExprPtr ident(std::string name, Pos pos)
    {
        auto e = node(ExprKind::Ident, pos);
        e->name = std::move(name);
        return e;
    }

    ExprPtr unary(UnaryOp op, ExprPtr operand, Pos pos)
    {
        auto e = node(ExprKind::Unary, pos);
        e->unary = op;
        e->args.push_back(std::move(operand));
        return e;
    }

    ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Pos pos)
    {
        auto e = node(ExprKind::Binary, pos);
        e->binary = op;
        e->args.push_back(std::move(lhs));
        e->args.push_back(std::move(rhs));
        return e;
    }

    ExprPtr call(Builtin fn, std::vector<ExprPtr> args, Pos pos)
    {
        auto e = node(ExprKind::Call, pos);
        e->builtin = fn;
        e->args = std::move(args);
        return e;
    }

    ExprPtr matrix(std::vector<ExprPtr> elems, DomainPtr index, Pos pos)
    {
        auto e = node(ExprKind::MatrixLit, pos);
        e->args = std::move(elems);
        e->index_domain = std::move(index);
        return e;
    }

    DomainPtr bool_domain(Pos pos)
    {
        auto d = std::make_shared<DomainAst>();
        d->kind = DomainKind::Bool;
        d->pos = pos;
        return d;
    }

    DomainPtr int_range(ExprPtr lo, ExprPtr hi, Pos pos)
    {
        auto d = std::make_shared<DomainAst>();
        d->kind = DomainKind::Int;
        d->pos = pos;
        d->ranges.push_back(RangeAst{std::move(lo), std::move(hi), true});
        return d;
    }
}

const char* spelling(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Pow: return "**";
    case BinaryOp::And: return "/\\";
    case BinaryOp::Or: return "\\/";
    case BinaryOp::Imp: return "->";
    case BinaryOp::Iff: return "<->";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::LexLt: return "<lex";
    case BinaryOp::LexLe: return "<=lex";
    case BinaryOp::LexGt: return ">lex";
    case BinaryOp::LexGe: return ">=lex";
    case BinaryOp::In: return "in";
    case BinaryOp::Comma: return ",";
    }
    return "?";
}

const char* spelling(Builtin fn)
{
    switch (fn) {
    case Builtin::AllDiff: return "allDiff";
    case Builtin::AllDiffExcept: return "alldifferent_except";
    case Builtin::Gcc: return "gcc";
    case Builtin::AtLeast: return "atleast";
    case Builtin::AtMost: return "atmost";
    case Builtin::Table: return "table";
    case Builtin::Min: return "min";
    case Builtin::Max: return "max";
    case Builtin::Sum: return "sum";
    case Builtin::Product: return "product";
    case Builtin::And: return "and";
    case Builtin::Or: return "or";
    case Builtin::Flatten: return "flatten";
    case Builtin::ToSet: return "toSet";
    case Builtin::ToInt: return "toInt";
    case Builtin::Factorial: return "factorial";
    case Builtin::Popcount: return "popcount";
    }
    return "?";
}

int precedence(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Pow: return 18;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 10;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 1;
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
    case BinaryOp::LexLt:
    case BinaryOp::LexLe:
    case BinaryOp::LexGt:
    case BinaryOp::LexGe:
    case BinaryOp::In: return 0;
    case BinaryOp::And: return -1;
    case BinaryOp::Or: return -2;
    case BinaryOp::Imp:
    case BinaryOp::Iff: return -4;
    case BinaryOp::Comma: return -20;
    }
    return 0;
}

bool is_comparison(BinaryOp op)
{
    return op == BinaryOp::Eq || op == BinaryOp::Ne || op == BinaryOp::Lt || op == BinaryOp::Le
        || op == BinaryOp::Gt || op == BinaryOp::Ge;
}

bool is_lex(BinaryOp op)
{
    return op == BinaryOp::LexLt || op == BinaryOp::LexLe || op == BinaryOp::LexGt || op == BinaryOp::LexGe;
}

bool is_logical(BinaryOp op)
{
    return op == BinaryOp::And || op == BinaryOp::Or || op == BinaryOp::Imp || op == BinaryOp::Iff
        || op == BinaryOp::Comma;
}

bool is_arithmetic(BinaryOp op)
{
    return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div
        || op == BinaryOp::Mod || op == BinaryOp::Pow;
}

} // namespace eprime
