#include "eprime/eval.hpp"

#include "eprime/arith.hpp"

#include <algorithm>

namespace eprime {

const Value* Env::lookup(const std::string& name) const
{
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
        if (it->first == name)
            return &it->second;
    auto f = inst_->values.find(name);
    return f == inst_->values.end() ? nullptr : &f->second;
}

bool Env::is_local(const std::string& name) const
{
    return std::any_of(locals_.begin(), locals_.end(), [&](const auto& p) { return p.first == name; });
}

const Domain* Env::lookup_domain(const std::string& name) const
{
    auto f = inst_->domains.find(name);
    return f == inst_->domains.end() ? nullptr : &f->second;
}

Value coerce_value(const Value& v, BaseType base)
{
    if (base != BaseType::Int)
        return v;
    if (v.is_bool())
        return Value::integer(v.to_int());
    if (!v.is_matrix())
        return v;
    const auto& m = v.as_matrix();
    if (std::none_of(m.elems.begin(), m.elems.end(), [](const Value& x) { return x.is_bool(); }))
        return v;
    std::vector<Value> out;
    out.reserve(m.elems.size());
    for (const auto& x : m.elems)
        out.push_back(x.is_bool() ? Value::integer(x.to_int()) : x);
    return Value::matrix(MatrixValue(m.index, std::move(out)));
}

std::int64_t index_key(const Domain& dim, const Value& v, Pos pos)
{
    if (dim.is_bool() && !v.is_bool())
        fail(ErrorKind::Expand, pos, "an integer is used to index a bool-indexed matrix dimension");
    return v.to_int();
}

Domain comprehension_index(const std::optional<Domain>& declared, std::size_t count, Pos pos)
{
    if (!declared)
        return Domain::contiguous(count);
    const Domain& d = *declared;
    if (d.is_bool()) {
        if (count != 2)
            fail(ErrorKind::Expand, pos, "index domain bool needs 2 elements but there are " + std::to_string(count));
        return d;
    }
    const IntDomain& s = d.ints();
    if (s.open_below())
        fail(ErrorKind::Expand, pos, "index domain " + d.str() + " has no lower bound");
    if (s.open_above()) {
        IntDomain p = s.prefix(count);
        if (p.size() != count)
            fail(ErrorKind::Expand, pos, "index domain " + d.str() + " has fewer than " + std::to_string(count) + " values");
        return Domain::integer(p);
    }
    if (s.size() != count)
        fail(ErrorKind::Expand, pos, "index domain " + d.str() + " has " + std::to_string(s.size()) + " values but there are "
                + std::to_string(count) + " elements");
    return d;
}

namespace {
    using OptValue = std::optional<Value>;

    std::int64_t checked(std::optional<std::int64_t> v, Pos pos, const char* op)
    {
        if (!v)
            fail(ErrorKind::Overflow, pos, std::string("64-bit overflow in ") + op);
        return *v;
    }

    Value default_of(const Type& t)
    {
        return t.is_bool() ? Value::boolean(false) : Value::integer(0);
    }

    /// Matrix of default elements shaped like the free dimensions of a slice.
    Value default_slice(const MatrixValue& m, const std::vector<std::optional<std::int64_t>>& spec, const Type& t)
    {
        std::vector<Domain> ix;
        for (std::size_t d = 0; d < spec.size(); ++d)
            if (!spec[d])
                ix.push_back(Domain::contiguous(m.index[d].atomic_size()));
        std::size_t n = MatrixValue::cell_count(ix);
        Value fill = t.base == BaseType::Bool ? Value::boolean(false) : Value::integer(0);
        return Value::matrix(MatrixValue(std::move(ix), std::vector<Value>(n, fill)));
    }

    const std::vector<Value>& elements(const Value& v) { return v.as_matrix().elems; }

    std::vector<std::int64_t> ints_of(const Value& v)
    {
        std::vector<std::int64_t> out;
        for (const auto& x : elements(v))
            out.push_back(x.to_int());
        return out;
    }

    /// -1, 0, 1 for a <lex b in dictionary order; a proper prefix is smaller.
    int lex_compare(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b)
    {
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] != b[i])
                return a[i] < b[i] ? -1 : 1;
        if (a.size() == b.size())
            return 0;
        return a.size() < b.size() ? -1 : 1;
    }

    class Evaluator {
    public:
        explicit Evaluator(Env& env) : env_(env) {}

        OptValue eval(const Expr& e)
        {
            if (e.type.is_bool())
                return Value::boolean(truth(e));
            switch (e.kind) {
            case ExprKind::IntLit: return Value::integer(e.int_value);
            case ExprKind::BoolLit: return Value::boolean(e.bool_value);
            case ExprKind::Ident: return ident(e);
            case ExprKind::MatrixLit: return matrix_literal(e);
            case ExprKind::Unary: return unary_int(e);
            case ExprKind::Binary: return binary_int(e);
            case ExprKind::Quantifier: return sum_quantifier(e);
            case ExprKind::Comprehension: return comprehension(e);
            case ExprKind::Index: return index(e);
            case ExprKind::Slice: return slice(e);
            case ExprKind::Call: return call_value(e);
            case ExprKind::SetDomain: {
                auto d = eval_domain(*e.domain, env_);
                if (!d)
                    return std::nullopt;
                return Value::set(d->as_int_set());
            }
            case ExprKind::InBounds: return Value::boolean(truth(e));
            }
            fail(ErrorKind::Internal, e.pos, "unhandled expression in evaluation");
        }

        bool truth(const Expr& e)
        {
            switch (e.kind) {
            case ExprKind::BoolLit: return e.bool_value;
            case ExprKind::Ident: {
                auto v = ident(e);
                return v->as_bool();
            }
            case ExprKind::Unary: return !truth(*e.args[0]);
            case ExprKind::Binary: return binary_bool(e);
            case ExprKind::Quantifier: return logic_quantifier(e);
            case ExprKind::Index: {
                auto v = index(e);
                return v && v->as_bool();
            }
            case ExprKind::InBounds: return in_bounds(e);
            case ExprKind::Call: return call_bool(e);
            default: break;
            }
            fail(ErrorKind::Internal, e.pos, "expression is not boolean");
        }

    private:
        Env& env_;

        OptValue ident(const Expr& e)
        {
            const Value* v = env_.lookup(e.name);
            if (!v)
                fail(ErrorKind::Expand, e.pos, "'" + e.name + "' has no value here");
            return *v;
        }

        std::optional<std::int64_t> int_of(const Expr& e)
        {
            auto v = eval(e);
            if (!v)
                return std::nullopt;
            return v->to_int();
        }

        OptValue matrix_literal(const Expr& e)
        {
            std::vector<Value> elems;
            elems.reserve(e.args.size());
            for (const auto& a : e.args) {
                auto v = eval(*a);
                if (!v)
                    return std::nullopt;
                elems.push_back(std::move(*v));
            }
            Domain ix = Domain::contiguous(elems.size());
            if (e.index_domain) {
                auto d = eval_domain(*e.index_domain, env_);
                if (!d)
                    return std::nullopt;
                if (!d->finite() || d->atomic_size() != elems.size())
                    fail(ErrorKind::Expand, e.pos, "index domain " + d->str() + " does not have "
                            + std::to_string(elems.size()) + " values");
                ix = *d;
            }
            return build_matrix(std::move(ix), std::move(elems), e.type, e.pos);
        }

        static Value build_matrix(Domain ix, std::vector<Value> elems, const Type& t, Pos pos)
        {
            if (t.dims <= 1) {
                for (auto& x : elems)
                    x = coerce_value(x, t.base);
                return Value::matrix(MatrixValue({std::move(ix)}, std::move(elems)));
            }
            std::vector<MatrixValue> rows;
            rows.reserve(elems.size());
            for (auto& x : elems)
                rows.push_back(coerce_value(x, t.base).as_matrix());
            std::vector<Domain> inner;
            if (rows.empty())
                inner.assign(static_cast<std::size_t>(t.dims - 1), Domain::contiguous(0));
            for (std::size_t i = 1; i < rows.size(); ++i)
                if (!(rows[i].index == rows[0].index))
                    fail(ErrorKind::Expand, pos, "irregular matrix: rows have different index domains");
            return Value::matrix(MatrixValue::stack(std::move(ix), rows, std::move(inner)));
        }

        OptValue unary_int(const Expr& e)
        {
            if (e.unary == UnaryOp::ToInt)
                return Value::integer(truth(*e.args[0]) ? 1 : 0);
            auto a = int_of(*e.args[0]);
            if (!a)
                return std::nullopt;
            if (e.unary == UnaryOp::Neg)
                return Value::integer(checked(arith::neg(*a), e.pos, "negation"));
            return Value::integer(checked(arith::abs(*a), e.pos, "absolute value"));
        }

        OptValue binary_int(const Expr& e)
        {
            auto a = int_of(*e.args[0]);
            auto b = int_of(*e.args[1]);
            if (!a || !b)
                return std::nullopt;
            switch (e.binary) {
            case BinaryOp::Add: return Value::integer(checked(arith::add(*a, *b), e.pos, "addition"));
            case BinaryOp::Sub: return Value::integer(checked(arith::sub(*a, *b), e.pos, "subtraction"));
            case BinaryOp::Mul: return Value::integer(checked(arith::mul(*a, *b), e.pos, "multiplication"));
            case BinaryOp::Div:
            case BinaryOp::Mod:
                if (*b == 0)
                    return e.total ? OptValue(Value::integer(0)) : std::nullopt;
                if (e.binary == BinaryOp::Div) {
                    if (*a == int_min && *b == -1)
                        fail(ErrorKind::Overflow, e.pos, "64-bit overflow in division");
                    return Value::integer(arith::floor_div(*a, *b));
                }
                return Value::integer(arith::floor_mod(*a, *b));
            case BinaryOp::Pow:
                if (!arith::pow_defined(*a, *b))
                    return e.total ? OptValue(Value::integer(0)) : std::nullopt;
                return Value::integer(checked(arith::pow(*a, *b), e.pos, "power"));
            default: break;
            }
            fail(ErrorKind::Internal, e.pos, "operator is not integer-valued");
        }

        bool binary_bool(const Expr& e)
        {
            const Expr& l = *e.args[0];
            const Expr& r = *e.args[1];
            switch (e.binary) {
            case BinaryOp::And:
            case BinaryOp::Comma: return truth(l) && truth(r);
            case BinaryOp::Or: return truth(l) || truth(r);
            case BinaryOp::Imp: return !truth(l) || truth(r);
            case BinaryOp::Iff: return truth(l) == truth(r);
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                auto a = eval(l);
                auto b = eval(r);
                if (!a || !b)
                    return false;
                bool eq = equal_values(*a, *b, e.pos);
                return e.binary == BinaryOp::Eq ? eq : !eq;
            }
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: {
                auto a = int_of(l);
                auto b = int_of(r);
                if (!a || !b)
                    return false;
                switch (e.binary) {
                case BinaryOp::Lt: return *a < *b;
                case BinaryOp::Le: return *a <= *b;
                case BinaryOp::Gt: return *a > *b;
                default: return *a >= *b;
                }
            }
            case BinaryOp::LexLt:
            case BinaryOp::LexLe:
            case BinaryOp::LexGt:
            case BinaryOp::LexGe: {
                auto a = eval(l);
                auto b = eval(r);
                if (!a || !b)
                    return false;
                int c = lex_compare(ints_of(*a), ints_of(*b));
                switch (e.binary) {
                case BinaryOp::LexLt: return c < 0;
                case BinaryOp::LexLe: return c <= 0;
                case BinaryOp::LexGt: return c > 0;
                default: return c >= 0;
                }
            }
            case BinaryOp::In: {
                auto a = int_of(l);
                auto s = eval(r);
                if (!a || !s)
                    return false;
                return s->as_set().contains(*a);
            }
            default: break;
            }
            fail(ErrorKind::Internal, e.pos, "operator is not boolean-valued");
        }

        static bool equal_values(const Value& a, const Value& b, Pos pos)
        {
            if (a.is_set() || b.is_set())
                return a.is_set() && b.is_set() && a.as_set() == b.as_set();
            if (a.is_matrix() || b.is_matrix()) {
                const auto& x = elements(a);
                const auto& y = elements(b);
                if (x.size() != y.size())
                    fail(ErrorKind::Expand, pos, "comparing matrices of different lengths " + std::to_string(x.size())
                            + " and " + std::to_string(y.size()));
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (x[i].to_int() != y[i].to_int())
                        return false;
                return true;
            }
            return a.to_int() == b.to_int();
        }

        bool logic_quantifier(const Expr& e)
        {
            auto dom = enumerate_binder_domain(*e.domain, env_, e.pos);
            if (!dom)
                return false;
            bool forall = e.quant == QuantKind::ForAll;
            bool result = forall;
            for_each_binding(env_, e.vars, *dom, [&] {
                if (truth(*e.args[0]) != forall) {
                    result = !forall;
                    return false;
                }
                return true;
            });
            return result;
        }

        OptValue sum_quantifier(const Expr& e)
        {
            auto dom = enumerate_binder_domain(*e.domain, env_, e.pos);
            if (!dom)
                return std::nullopt;
            std::int64_t total = 0;
            bool defined = true;
            for_each_binding(env_, e.vars, *dom, [&] {
                auto v = int_of(*e.args[0]);
                if (!v) {
                    defined = false;
                    return false;
                }
                total = checked(arith::add(total, *v), e.pos, "sum");
                return true;
            });
            if (!defined)
                return std::nullopt;
            return Value::integer(total);
        }

        bool comprehension_elements(const Expr& e, std::size_t g, std::vector<Value>& out)
        {
            if (g == e.generators.size()) {
                for (const auto& c : e.conditions)
                    if (!truth(*c))
                        return true;
                auto v = eval(*e.args[0]);
                if (!v)
                    return false;
                out.push_back(std::move(*v));
                return true;
            }
            const Generator& gen = e.generators[g];
            auto dom = enumerate_binder_domain(*gen.domain, env_, gen.pos);
            if (!dom)
                return false;
            return for_each_binding(env_, gen.vars, *dom, [&] { return comprehension_elements(e, g + 1, out); });
        }

        OptValue comprehension(const Expr& e)
        {
            std::vector<Value> elems;
            if (!comprehension_elements(e, 0, elems))
                return std::nullopt;
            std::optional<Domain> declared;
            if (e.index_domain) {
                declared = eval_domain(*e.index_domain, env_);
                if (!declared)
                    return std::nullopt;
            }
            Domain ix = comprehension_index(declared, elems.size(), e.pos);
            return build_matrix(std::move(ix), std::move(elems), e.type, e.pos);
        }

        std::optional<std::vector<std::optional<std::int64_t>>> keys(const Expr& e, const MatrixValue& m)
        {
            std::vector<std::optional<std::int64_t>> out;
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                if (!e.args[i]) {
                    out.emplace_back();
                    continue;
                }
                auto v = eval(*e.args[i]);
                if (!v)
                    return std::nullopt;
                out.emplace_back(index_key(m.index[i - 1], *v, e.args[i]->pos));
            }
            return out;
        }

        OptValue index(const Expr& e)
        {
            auto mv = eval(*e.args[0]);
            if (!mv)
                return e.total ? OptValue(default_of(e.type)) : std::nullopt;
            const auto& m = mv->as_matrix();
            auto ks = keys(e, m);
            if (!ks)
                return e.total ? OptValue(default_of(e.type)) : std::nullopt;
            std::vector<std::int64_t> key;
            for (auto& k : *ks)
                key.push_back(*k);
            const Value* x = m.at(key);
            if (!x)
                return e.total ? OptValue(default_of(e.type)) : std::nullopt;
            return coerce_value(*x, e.type.base);
        }

        OptValue slice(const Expr& e)
        {
            auto mv = eval(*e.args[0]);
            if (!mv)
                return std::nullopt;
            const auto& m = mv->as_matrix();
            auto ks = keys(e, m);
            if (!ks)
                return std::nullopt;
            auto r = m.slice(*ks);
            if (!r)
                return e.total ? OptValue(default_slice(m, *ks, e.type)) : std::nullopt;
            return Value::matrix(std::move(*r));
        }

        bool in_bounds(const Expr& e)
        {
            auto mv = eval(*e.args[0]);
            if (!mv)
                return false;
            const auto& m = mv->as_matrix();
            auto ks = keys(e, m);
            if (!ks)
                return false;
            for (std::size_t d = 0; d < ks->size(); ++d)
                if ((*ks)[d] && !m.index[d].position(*(*ks)[d]))
                    return false;
            return true;
        }

        std::optional<std::vector<std::int64_t>> int_vector(const Expr& e)
        {
            auto v = eval(e);
            if (!v)
                return std::nullopt;
            return ints_of(*v);
        }

        OptValue call_value(const Expr& e)
        {
            switch (e.builtin) {
            case Builtin::Min:
            case Builtin::Max: {
                std::vector<std::int64_t> xs;
                if (e.args.size() == 2) {
                    auto a = int_of(*e.args[0]);
                    auto b = int_of(*e.args[1]);
                    if (!a || !b)
                        return std::nullopt;
                    xs = {*a, *b};
                }
                else {
                    auto v = int_vector(*e.args[0]);
                    if (!v)
                        return std::nullopt;
                    xs = std::move(*v);
                }
                if (xs.empty())
                    fail(ErrorKind::Expand, e.pos, std::string(spelling(e.builtin)) + " of an empty matrix");
                return Value::integer(e.builtin == Builtin::Min ? *std::min_element(xs.begin(), xs.end())
                                                                : *std::max_element(xs.begin(), xs.end()));
            }
            case Builtin::Sum:
            case Builtin::Product: {
                auto v = int_vector(*e.args[0]);
                if (!v)
                    return std::nullopt;
                std::int64_t acc = e.builtin == Builtin::Sum ? 0 : 1;
                for (auto x : *v)
                    acc = e.builtin == Builtin::Sum ? checked(arith::add(acc, x), e.pos, "sum")
                                                    : checked(arith::mul(acc, x), e.pos, "product");
                return Value::integer(acc);
            }
            case Builtin::Flatten: {
                auto v = eval(*e.args.back());
                if (!v)
                    return std::nullopt;
                const auto& m = v->as_matrix();
                if (e.args.size() == 1)
                    return Value::matrix(m.flatten_all());
                auto n = int_of(*e.args[0]);
                if (!n)
                    return std::nullopt;
                return Value::matrix(m.flatten(static_cast<std::size_t>(*n)));
            }
            case Builtin::ToSet: {
                auto v = int_vector(*e.args[0]);
                if (!v)
                    return std::nullopt;
                return Value::set(IntDomain::from_values(std::move(*v)));
            }
            case Builtin::Factorial: {
                auto a = int_of(*e.args[0]);
                if (!a || !arith::factorial_defined(*a))
                    return e.total ? OptValue(Value::integer(0)) : std::nullopt;
                return Value::integer(arith::factorial(*a));
            }
            case Builtin::Popcount: {
                auto a = int_of(*e.args[0]);
                if (!a)
                    return std::nullopt;
                return Value::integer(arith::popcount(*a));
            }
            default: break;
            }
            fail(ErrorKind::Internal, e.pos, "function is not value-valued");
        }

        static std::int64_t count_of(const std::vector<std::int64_t>& xs, std::int64_t v)
        {
            return std::count(xs.begin(), xs.end(), v);
        }

        bool call_bool(const Expr& e)
        {
            switch (e.builtin) {
            case Builtin::And:
            case Builtin::Or: {
                auto v = eval(*e.args[0]);
                if (!v)
                    return false;
                const auto& xs = elements(*v);
                if (e.builtin == Builtin::And)
                    return std::all_of(xs.begin(), xs.end(), [](const Value& x) { return x.as_bool(); });
                return std::any_of(xs.begin(), xs.end(), [](const Value& x) { return x.as_bool(); });
            }
            case Builtin::AllDiff: {
                auto xs = int_vector(*e.args[0]);
                if (!xs)
                    return false;
                auto s = *xs;
                std::sort(s.begin(), s.end());
                return std::adjacent_find(s.begin(), s.end()) == s.end();
            }
            case Builtin::AllDiffExcept: {
                auto xs = int_vector(*e.args[0]);
                auto ex = int_of(*e.args[1]);
                if (!xs || !ex)
                    return false;
                std::vector<std::int64_t> s;
                for (auto x : *xs)
                    if (x != *ex)
                        s.push_back(x);
                std::sort(s.begin(), s.end());
                return std::adjacent_find(s.begin(), s.end()) == s.end();
            }
            case Builtin::Gcc:
            case Builtin::AtLeast:
            case Builtin::AtMost: {
                auto xs = int_vector(*e.args[0]);
                auto a = int_vector(*e.args[1]);
                auto b = int_vector(*e.args[2]);
                if (!xs || !a || !b)
                    return false;
                const auto& vals = e.builtin == Builtin::Gcc ? *a : *b;
                const auto& counts = e.builtin == Builtin::Gcc ? *b : *a;
                if (vals.size() != counts.size())
                    fail(ErrorKind::Expand, e.pos, std::string(spelling(e.builtin)) + " has " + std::to_string(vals.size())
                            + " values but " + std::to_string(counts.size()) + " counts");
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    std::int64_t c = count_of(*xs, vals[i]);
                    bool ok = e.builtin == Builtin::Gcc ? c == counts[i]
                        : e.builtin == Builtin::AtLeast ? c >= counts[i]
                                                        : c <= counts[i];
                    if (!ok)
                        return false;
                }
                return true;
            }
            case Builtin::Table: {
                auto xs = int_vector(*e.args[0]);
                auto t = eval(*e.args[1]);
                if (!xs || !t)
                    return false;
                const auto& m = t->as_matrix();
                std::size_t width = m.index[1].atomic_size();
                if (width != xs->size())
                    fail(ErrorKind::Expand, e.pos, "table tuples have " + std::to_string(width) + " columns but the scope has "
                            + std::to_string(xs->size()) + " variables");
                for (std::size_t r = 0; r * width < m.elems.size(); ++r) {
                    bool match = true;
                    for (std::size_t c = 0; c < width && match; ++c)
                        match = m.elems[r * width + c].to_int() == (*xs)[c];
                    if (match)
                        return true;
                }
                return false;
            }
            default: break;
            }
            fail(ErrorKind::Internal, e.pos, "function is not boolean-valued");
        }
    };

    std::optional<IntDomain> eval_int_domain(const DomainAst& d, Env& env)
    {
        Evaluator ev(env);
        if (d.unbounded)
            return IntDomain::unbounded();
        std::vector<IntDomain> parts;
        for (const auto& r : d.ranges) {
            std::optional<std::int64_t> lo, hi;
            if (r.lo) {
                auto v = ev.eval(*r.lo);
                if (!v)
                    return std::nullopt;
                lo = v->to_int();
            }
            if (r.hi) {
                auto v = ev.eval(*r.hi);
                if (!v)
                    return std::nullopt;
                hi = v->to_int();
            }
            if (!r.is_range)
                parts.push_back(IntDomain::interval(*lo, *lo));
            else if (lo && hi)
                parts.push_back(IntDomain::interval(*lo, *hi));
            else
                parts.push_back(IntDomain::half_open(lo, hi));
        }
        return IntDomain::join(parts);
    }
}

std::optional<Value> eval_ground(const Expr& e, Env& env)
{
    return Evaluator(env).eval(e);
}

bool eval_bool(const Expr& e, Env& env)
{
    return Evaluator(env).truth(e);
}

std::optional<Domain> eval_domain(const DomainAst& d, Env& env)
{
    switch (d.kind) {
    case DomainKind::Bool: return Domain::boolean();
    case DomainKind::Int: {
        auto s = eval_int_domain(d, env);
        if (!s)
            return std::nullopt;
        return Domain::integer(std::move(*s));
    }
    case DomainKind::Matrix: {
        std::vector<Domain> index;
        for (const auto& ix : d.index) {
            auto x = eval_domain(*ix, env);
            if (!x)
                return std::nullopt;
            if (!x->finite())
                fail(ErrorKind::Expand, ix->pos, "matrix index domain " + x->str() + " is not finite");
            index.push_back(std::move(*x));
        }
        auto base = eval_domain(*d.base, env);
        if (!base)
            return std::nullopt;
        return Domain::matrix(std::move(index), std::move(*base));
    }
    case DomainKind::Named: {
        const Domain* x = env.lookup_domain(d.name);
        if (!x)
            fail(ErrorKind::Expand, d.pos, "domain '" + d.name + "' has no value here");
        return *x;
    }
    case DomainKind::Binary: {
        auto a = eval_domain(*d.lhs, env);
        auto b = eval_domain(*d.rhs, env);
        if (!a || !b)
            return std::nullopt;
        DomainSetOp op = d.op == DomainOp::Union ? DomainSetOp::Union
            : d.op == DomainOp::Intersect        ? DomainSetOp::Intersect
                                                 : DomainSetOp::Minus;
        IntDomain r = domain_binop(op, a->as_int_set(), b->as_int_set());
        if (a->is_bool()) {
            if (r == IntDomain::interval(0, 1))
                return Domain::boolean();
            fail(ErrorKind::Expand, d.pos, "the result " + r.str() + " of a bool domain operation is not a bool domain");
        }
        return Domain::integer(std::move(r));
    }
    }
    return std::nullopt;
}

std::optional<std::vector<Value>> enumerate_binder_domain(const DomainAst& d, Env& env, Pos pos)
{
    auto dom = eval_domain(d, env);
    if (!dom)
        return std::nullopt;
    if (!dom->finite())
        fail(ErrorKind::Expand, pos, "cannot enumerate open domain " + dom->str());
    try {
        return domain_enumerate(*dom, env.enum_cap());
    }
    catch (const Error& err) {
        fail(err.kind(), pos, err.detail());
    }
}

} // namespace eprime
