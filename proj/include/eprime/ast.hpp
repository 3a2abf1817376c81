#pragma once

#include "eprime/error.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace eprime {

enum class BaseType { Int, Bool };

/// Static type of an expression. Matrices carry their dimension count and
/// atomic base type; Set is the type of `toSet(..)` and domain operands of `in`.
struct Type {
    enum class Kind { Unknown, Int, Bool, Matrix, Set };

    Kind kind = Kind::Unknown;
    int dims = 0;
    BaseType base = BaseType::Int;

    static Type integer() { return {Kind::Int, 0, BaseType::Int}; }
    static Type boolean() { return {Kind::Bool, 0, BaseType::Bool}; }
    static Type matrix(int dims, BaseType base) { return {Kind::Matrix, dims, base}; }
    static Type set() { return {Kind::Set, 0, BaseType::Int}; }
    static Type atomic(BaseType b) { return b == BaseType::Int ? integer() : boolean(); }

    [[nodiscard]] bool is_int() const { return kind == Kind::Int; }
    [[nodiscard]] bool is_bool() const { return kind == Kind::Bool; }
    [[nodiscard]] bool is_matrix() const { return kind == Kind::Matrix; }
    [[nodiscard]] bool is_scalar() const { return is_int() || is_bool(); }
    [[nodiscard]] bool known() const { return kind != Kind::Unknown; }

    friend bool operator==(const Type&, const Type&) = default;
};

[[nodiscard]] std::string to_string(const Type& t);

struct Expr;
struct DomainAst;
using ExprPtr = std::shared_ptr<const Expr>;
using DomainPtr = std::shared_ptr<const DomainAst>;

enum class ExprKind {
    IntLit,
    BoolLit,
    Ident,
    MatrixLit,
    Unary,
    Binary,
    Quantifier,
    Comprehension,
    Index,
    Slice,
    Call,
    SetDomain, ///< a domain expression used as a set (right operand of `in`)
    InBounds,  ///< definedness test for an Index/Slice: `args[0]` matrix, rest indices
};

enum class UnaryOp { Neg, Not, Abs, ToInt };

enum class BinaryOp {
    Add, Sub, Mul, Div, Mod, Pow,
    And, Or, Imp, Iff,
    Eq, Ne, Lt, Le, Gt, Ge,
    LexLt, LexLe, LexGt, LexGe,
    In,
    Comma,
};

enum class QuantKind { ForAll, Exists, Sum };

enum class Builtin {
    AllDiff, AllDiffExcept, Gcc, AtLeast, AtMost, Table,
    Min, Max, Sum, Product, And, Or,
    Flatten, ToSet, ToInt, Factorial, Popcount,
};

struct Generator {
    std::vector<std::string> vars;
    DomainPtr domain;
    Pos pos;
};

/// Expression node. Trees are immutable and shared; the type checker builds a
/// new tree with `type` and `decision` filled in.
struct Expr {
    ExprKind kind = ExprKind::IntLit;
    Pos pos;

    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string name; ///< Ident
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    QuantKind quant = QuantKind::ForAll;
    Builtin builtin = Builtin::Min;

    /// Set on partial operations (/, %, **, factorial, Index, Slice) once the
    /// undefinedness guard has been hoisted: undefined inputs yield 0 / false.
    bool total = false;

    /// Binary/Unary operands, Call arguments, MatrixLit elements, Index/Slice
    /// matrix followed by indices (a null index is `..`), Quantifier body.
    std::vector<ExprPtr> args;

    std::vector<std::string> vars; ///< Quantifier bound variables
    DomainPtr domain;              ///< Quantifier domain; SetDomain operand

    std::vector<Generator> generators; ///< Comprehension
    std::vector<ExprPtr> conditions;   ///< Comprehension
    DomainPtr index_domain;            ///< MatrixLit / Comprehension explicit index

    Type type;
    bool decision = false;
};

enum class DomainKind { Bool, Int, Matrix, Named, Binary };
enum class DomainOp { Union, Intersect, Minus };

struct RangeAst {
    ExprPtr lo; ///< null for `..hi`
    ExprPtr hi; ///< null for `lo..`; unused when !is_range
    bool is_range = false;
};

struct DomainAst {
    DomainKind kind = DomainKind::Bool;
    Pos pos;
    std::vector<RangeAst> ranges; ///< Int
    bool unbounded = false;       ///< plain `int`
    std::vector<DomainPtr> index; ///< Matrix
    DomainPtr base;               ///< Matrix
    std::string name;             ///< Named
    DomainOp op = DomainOp::Union;
    DomainPtr lhs, rhs;           ///< Binary
};

enum class StmtKind {
    Header,
    Given,
    Letting,
    LettingDomain,
    Find,
    Where,
    Objective,
    BranchingOn,
    Heuristic,
    SuchThat,
};

struct Statement {
    StmtKind kind = StmtKind::Header;
    Pos pos;
    std::vector<std::string> names;
    DomainPtr domain;           ///< Given/Find/LettingDomain; optional for Letting
    ExprPtr expr;               ///< Letting value, Objective
    std::vector<ExprPtr> exprs; ///< SuchThat/Where list, BranchingOn entries
    bool maximising = false;
    std::string text;           ///< Header version, Heuristic name
};

struct SourceModel {
    std::vector<Statement> statements;

    [[nodiscard]] std::size_t count(StmtKind kind) const;
};

// Node construction helpers, used by the parser and by rewriting passes.
namespace ast {
    ExprPtr int_lit(std::int64_t v, Pos pos = {});
    ExprPtr bool_lit(bool v, Pos pos = {});
    ExprPtr ident(std::string name, Pos pos = {});
    ExprPtr unary(UnaryOp op, ExprPtr operand, Pos pos = {});
    ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Pos pos = {});
    ExprPtr call(Builtin fn, std::vector<ExprPtr> args, Pos pos = {});
    ExprPtr matrix(std::vector<ExprPtr> elems, DomainPtr index = nullptr, Pos pos = {});

    DomainPtr bool_domain(Pos pos = {});
    DomainPtr int_range(ExprPtr lo, ExprPtr hi, Pos pos = {});
}

[[nodiscard]] const char* spelling(BinaryOp op);
[[nodiscard]] const char* spelling(Builtin fn);
[[nodiscard]] int precedence(BinaryOp op);
[[nodiscard]] bool is_comparison(BinaryOp op);
[[nodiscard]] bool is_lex(BinaryOp op);
[[nodiscard]] bool is_logical(BinaryOp op);
[[nodiscard]] bool is_arithmetic(BinaryOp op);

} // namespace eprime
