#pragma once

#include "eprime/eval.hpp"
#include "eprime/flat.hpp"
#include "eprime/term.hpp"
#include "eprime/typecheck.hpp"

#include <memory>
#include <string>
#include <unordered_map>

namespace eprime {

using TermMatrix = MatrixOf<TermPtr>;

/// Expansion result: a scalar term, a matrix of terms, or a ground set.
struct Sym {
    TermPtr scalar;
    std::shared_ptr<const TermMatrix> matrix;
    std::shared_ptr<const IntDomain> set;

    static Sym of(TermPtr t) { return {std::move(t), nullptr, nullptr}; }
    static Sym of(TermMatrix m) { return {nullptr, std::make_shared<const TermMatrix>(std::move(m)), nullptr}; }
};

[[nodiscard]] Sym to_sym(const Value& v);

/// Partial evaluator over a typed, guarded tree. Ground subtrees are folded
/// with eval_ground; decision variables become solver variable terms.
class Expander {
public:
    Expander(const Instance& inst, std::unordered_map<std::string, Sym> decisions)
        : env_(inst), decisions_(std::move(decisions))
    {
    }

    [[nodiscard]] Env& env() { return env_; }

    Sym expand(const Expr& e);
    TermPtr expand_scalar(const Expr& e);

    /// forAll / exists / sum unrolled over the quantifier domain.
    TermPtr expand_quantifier(const Expr& q);
    /// Elements for each satisfying generator binding, in lexicographic order.
    TermMatrix expand_comprehension(const Expr& c);

private:
    Env env_;
    std::unordered_map<std::string, Sym> decisions_;

    TermMatrix expand_matrix(const Expr& e);
    std::vector<TermPtr> elements(const Expr& e);
    std::vector<std::int64_t> ground_ints(const Expr& e);
    Value ground(const Expr& e);
    std::optional<std::vector<std::optional<std::int64_t>>> keys(const Expr& e, const TermMatrix& m);
    Sym binary(const Expr& e);
    Sym call(const Expr& e);
    Sym build(Domain ix, std::vector<Sym> elems, const Type& t, Pos pos);
};

/// Element of a matrix at ground keys; null when a key is out of bounds.
template <class T>
[[nodiscard]] const T* index_matrix(const MatrixOf<T>& m, std::span<const std::int64_t> keys)
{
    return m.at(keys);
}

/// Slice with nullopt marking `..`; nullopt result when a fixed key is out of bounds.
template <class T>
[[nodiscard]] std::optional<MatrixOf<T>> slice_matrix(const MatrixOf<T>& m, std::span<const std::optional<std::int64_t>> spec)
{
    return m.slice(spec);
}

/// flatten(n, X), or flatten(X) for all dimensions when n is absent.
template <class T>
[[nodiscard]] MatrixOf<T> flatten(std::optional<std::size_t> n, const MatrixOf<T>& m)
{
    return n ? m.flatten(*n) : m.flatten_all();
}

/// Expands and flattens every constraint, the objective and the branching list.
[[nodiscard]] FlatCSP flatten_model(const TypedModel& model, const Instance& inst);

} // namespace eprime
