#pragma once

#include "eprime/domain.hpp"
#include "eprime/error.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace eprime {

/// Expanded decision expressions: quantifiers and matrices are gone, every
/// operation is total, and leaves are constants or solver variables.
enum class TermOp {
    Const, Var,
    Neg, Abs, Add, Mul, Div, Mod, Pow, Min, Max,
    Not, And, Or, Imp, Eq, Ne, Lt, Le, InSet,
    Lex, AllDiff, AllDiffExcept, Gcc, AtLeast, AtMost, Table,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;
using Tuples = std::vector<std::vector<std::int64_t>>;

struct Term {
    TermOp op = TermOp::Const;
    bool is_bool = false;
    std::int64_t value = 0; ///< Const
    int var = -1;           ///< Var
    std::vector<TermPtr> args;
    std::size_t split = 0;  ///< Lex and Gcc: args before `split` are X
    bool strict = false;    ///< Lex
    std::vector<std::int64_t> vals;   ///< AllDiffExcept (one), Gcc, AtLeast, AtMost
    std::vector<std::int64_t> counts; ///< AtLeast, AtMost
    std::shared_ptr<const IntDomain> set;  ///< InSet
    std::shared_ptr<const Tuples> tuples;  ///< Table

    [[nodiscard]] bool is_const() const { return op == TermOp::Const; }
    [[nodiscard]] bool is_true() const { return op == TermOp::Const && value != 0; }
    [[nodiscard]] bool is_false() const { return op == TermOp::Const && value == 0; }
};

[[nodiscard]] bool same_term(const Term& a, const Term& b);
[[nodiscard]] std::string to_string(const Term& t);

/// Smart constructors. They fold constants under the totalized semantics
/// (x/0 = x%0 = 0, invalid powers are 0), absorb true/false, and fold
/// comparisons of identical subterms.
namespace term {
    TermPtr constant(std::int64_t v);
    TermPtr boolean(bool b);
    TermPtr var(int id, bool is_bool);

    TermPtr neg(TermPtr a);
    TermPtr abs(TermPtr a);
    TermPtr add(std::vector<TermPtr> xs);
    TermPtr sub(TermPtr a, TermPtr b);
    TermPtr mul(TermPtr a, TermPtr b);
    TermPtr div(TermPtr a, TermPtr b);
    TermPtr mod(TermPtr a, TermPtr b);
    TermPtr pow(TermPtr a, TermPtr b);
    TermPtr min(std::vector<TermPtr> xs);
    TermPtr max(std::vector<TermPtr> xs);

    TermPtr not_(TermPtr a);
    TermPtr and_(std::vector<TermPtr> xs);
    TermPtr or_(std::vector<TermPtr> xs);
    TermPtr imp(TermPtr a, TermPtr b);
    TermPtr eq(TermPtr a, TermPtr b);
    TermPtr ne(TermPtr a, TermPtr b);
    TermPtr lt(TermPtr a, TermPtr b);
    TermPtr le(TermPtr a, TermPtr b);
    TermPtr in_set(TermPtr a, IntDomain s);

    TermPtr lex(std::vector<TermPtr> xs, std::vector<TermPtr> ys, bool strict);
    TermPtr alldiff(std::vector<TermPtr> xs);
    TermPtr alldiff_except(std::vector<TermPtr> xs, std::int64_t except);
    TermPtr gcc(std::vector<TermPtr> xs, std::vector<std::int64_t> vals, std::vector<TermPtr> counts);
    TermPtr atleast(std::vector<TermPtr> xs, std::vector<std::int64_t> counts, std::vector<std::int64_t> vals);
    TermPtr atmost(std::vector<TermPtr> xs, std::vector<std::int64_t> counts, std::vector<std::int64_t> vals);
    TermPtr table(std::vector<TermPtr> xs, Tuples tuples);

    /// The global constraints rewritten into comparisons and connectives.
    TermPtr decompose(const Term& global);
}

} // namespace eprime
