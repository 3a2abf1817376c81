#include "reference.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace oracle {

using namespace eprime;
using K = RVal::K;

bool RVal::operator==(const RVal& o) const
{
    if (k != o.k)
        return false;
    switch (k) {
    case K::Int: return i == o.i;
    case K::Bool: return b == o.b;
    case K::Set: return set == o.set;
    case K::Mat: return keys == o.keys && base_bool == o.base_bool && elems == o.elems;
    }
    return false;
}

namespace {

std::int64_t checked(__int128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw Overflow();
    return static_cast<std::int64_t>(v);
}

std::int64_t fdiv(std::int64_t a, std::int64_t b)
{
    __int128 q = static_cast<__int128>(a) / b;
    if ((static_cast<__int128>(a) % b != 0) && ((a < 0) != (b < 0)))
        q -= 1;
    return checked(q);
}

std::int64_t fmod(std::int64_t a, std::int64_t b)
{
    return checked(static_cast<__int128>(a) - static_cast<__int128>(b) * fdiv(a, b));
}

std::optional<std::int64_t> power(std::int64_t x, std::int64_t y)
{
    if (y < 0 || (x == 0 && y == 0))
        return std::nullopt;
    __int128 r = 1;
    for (std::int64_t k = 0; k < y; ++k) {
        r *= x;
        checked(r);
        if (r == 0 || r == 1)
            break;
        if (r == -1) {
            // -1 to the remaining power alternates
            if ((y - k - 1) % 2 == 1)
                r = 1;
            break;
        }
    }
    return checked(r);
}

RVal make_matrix(std::vector<std::vector<std::int64_t>> keys, bool base_bool, std::vector<RVal> elems)
{
    RVal r;
    r.k = K::Mat;
    r.keys = std::move(keys);
    r.base_bool = base_bool;
    r.elems = std::move(elems);
    return r;
}

std::vector<std::int64_t> one_to(std::size_t n)
{
    std::vector<std::int64_t> v;
    for (std::size_t i = 1; i <= n; ++i)
        v.push_back(static_cast<std::int64_t>(i));
    return v;
}

std::vector<std::int64_t> seq(const RVal& m)
{
    std::vector<std::int64_t> out;
    for (const auto& e : m.elems)
        out.push_back(e.as_int());
    return out;
}

bool builtin_is_bool(Builtin b)
{
    switch (b) {
    case Builtin::AllDiff:
    case Builtin::AllDiffExcept:
    case Builtin::Gcc:
    case Builtin::AtLeast:
    case Builtin::AtMost:
    case Builtin::Table:
    case Builtin::And:
    case Builtin::Or: return true;
    default: return false;
    }
}

} // namespace

const RVal& Reference::lookup(const std::string& name)
{
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
        if (it->first == name)
            return it->second;
    auto g = globals.find(name);
    if (g == globals.end())
        throw std::runtime_error("reference: unknown identifier " + name);
    return g->second;
}

bool Reference::is_bool_node(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::BoolLit: return true;
    case ExprKind::IntLit: return false;
    case ExprKind::Ident: return lookup(e.name).k == K::Bool;
    case ExprKind::Unary: return e.unary == UnaryOp::Not;
    case ExprKind::Binary: return !is_arithmetic(e.binary);
    case ExprKind::Quantifier: return e.quant != QuantKind::Sum;
    case ExprKind::Call: return builtin_is_bool(e.builtin);
    case ExprKind::InBounds: return true;
    case ExprKind::Index: {
        // static base type of the indexed matrix
        std::function<bool(const Expr&)> base = [&](const Expr& m) -> bool {
            switch (m.kind) {
            case ExprKind::Ident: return lookup(m.name).base_bool;
            case ExprKind::MatrixLit:
                if (m.args.empty())
                    return false;
                if (m.args[0]->kind == ExprKind::MatrixLit || m.args[0]->kind == ExprKind::Comprehension)
                    return base(*m.args[0]);
                return is_bool_node(*m.args[0]);
            case ExprKind::Slice: return base(*m.args[0]);
            case ExprKind::Call: return base(*m.args.back());
            case ExprKind::Comprehension: {
                // element type may depend on generator variables; bind the first value
                auto dom = domain_values(*m.generators.at(0).domain);
                if (!dom || dom->empty())
                    return false;
                for (const auto& v : m.generators[0].vars)
                    locals_.emplace_back(v, dom->front());
                bool r = false;
                for (std::size_t g = 1; g < m.generators.size(); ++g) {
                    auto d = domain_values(*m.generators[g].domain);
                    for (const auto& v : m.generators[g].vars)
                        locals_.emplace_back(v, d && !d->empty() ? d->front() : RVal::integer(0));
                }
                r = is_bool_node(*m.args[0]);
                std::size_t n = 0;
                for (const auto& g : m.generators)
                    n += g.vars.size();
                locals_.resize(locals_.size() - n);
                return r;
            }
            default: return false;
            }
        };
        return base(*e.args[0]);
    }
    default: return false;
    }
}

std::optional<std::vector<std::int64_t>> Reference::keys_of(const DomainAst& d)
{
    auto vals = domain_values(d);
    if (!vals)
        return std::nullopt;
    std::vector<std::int64_t> out;
    for (const auto& v : *vals)
        out.push_back(v.as_int());
    return out;
}

std::optional<std::vector<RVal>> Reference::domain_values(const DomainAst& d)
{
    std::vector<RVal> out;
    switch (d.kind) {
    case DomainKind::Bool:
        out = {RVal::boolean(false), RVal::boolean(true)};
        return out;
    case DomainKind::Int: {
        std::set<std::int64_t> s;
        for (const auto& r : d.ranges) {
            if (!r.is_range) {
                auto v = num(*r.lo);
                if (!v)
                    return std::nullopt;
                s.insert(*v);
                continue;
            }
            if (!r.lo || !r.hi)
                throw std::runtime_error("reference: open domain");
            auto lo = num(*r.lo);
            auto hi = num(*r.hi);
            if (!lo || !hi)
                return std::nullopt;
            for (std::int64_t v = *lo; v <= *hi; ++v)
                s.insert(v);
        }
        for (auto v : s)
            out.push_back(RVal::integer(v));
        return out;
    }
    case DomainKind::Matrix: {
        std::vector<std::vector<std::int64_t>> keys;
        std::size_t cells = 1;
        for (const auto& ix : d.index) {
            auto k = keys_of(*ix);
            if (!k)
                return std::nullopt;
            cells *= k->size();
            keys.push_back(*k);
        }
        auto base = domain_values(*d.base);
        if (!base)
            return std::nullopt;
        bool bb = d.base->kind == DomainKind::Bool;
        std::vector<std::size_t> digit(cells, 0);
        if (base->empty() && cells > 0)
            return out;
        for (;;) {
            std::vector<RVal> elems;
            for (auto g : digit)
                elems.push_back((*base)[g]);
            out.push_back(make_matrix(keys, bb, std::move(elems)));
            std::size_t p = cells;
            bool done = true;
            while (p-- > 0) {
                if (++digit[p] < base->size()) {
                    done = false;
                    break;
                }
                digit[p] = 0;
            }
            if (done)
                break;
        }
        return out;
    }
    default: throw std::runtime_error("reference: unsupported domain");
    }
}

std::optional<std::int64_t> Reference::num(const Expr& e)
{
    if (is_bool_node(e))
        return bool_value(e) ? 1 : 0;
    auto v = int_value(e);
    if (!v)
        return std::nullopt;
    if (v->k == K::Mat || v->k == K::Set)
        throw std::runtime_error("reference: expected a scalar");
    return v->as_int();
}

std::optional<RVal> Reference::eval(const Expr& e)
{
    if (is_bool_node(e))
        return RVal::boolean(bool_value(e));
    return int_value(e);
}

bool Reference::truth(const Expr& e)
{
    return bool_value(e);
}

std::optional<RVal> Reference::matrix(const Expr& e)
{
    auto v = eval(e);
    if (v && v->k != K::Mat)
        throw std::runtime_error("reference: expected a matrix");
    return v;
}

std::optional<std::vector<std::int64_t>> Reference::ints(const Expr& e)
{
    auto m = matrix(e);
    if (!m)
        return std::nullopt;
    return seq(*m);
}

std::optional<RVal> Reference::comprehension(const Expr& e)
{
    std::vector<RVal> elems;
    std::vector<std::vector<std::int64_t>> inner;
    bool inner_set = false;
    bool base_bool = false;
    bool undefined = false;
    std::vector<std::pair<std::string, const DomainAst*>> binders;
    for (const auto& g : e.generators)
        for (const auto& v : g.vars)
            binders.emplace_back(v, g.domain.get());

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (undefined)
            return;
        if (k == binders.size()) {
            for (const auto& c : e.conditions)
                if (!bool_value(*c))
                    return;
            auto v = eval(*e.args[0]);
            if (!v) {
                undefined = true;
                return;
            }
            if (v->k == K::Mat) {
                if (inner_set && v->keys != inner)
                    throw std::runtime_error("reference: irregular comprehension");
                inner = v->keys;
                inner_set = true;
                base_bool = v->base_bool;
                for (auto& x : v->elems)
                    elems.push_back(x);
            }
            else {
                base_bool = v->k == K::Bool;
                elems.push_back(*v);
            }
            return;
        }
        auto dom = domain_values(*binders[k].second);
        if (!dom) {
            undefined = true;
            return;
        }
        for (const auto& x : *dom) {
            locals_.emplace_back(binders[k].first, x);
            rec(k + 1);
            locals_.pop_back();
        }
    };
    rec(0);
    if (undefined)
        return std::nullopt;
    std::size_t stride = 1;
    for (const auto& k : inner)
        stride *= k.size();
    std::size_t count = stride == 0 ? 0 : elems.size() / stride;
    std::vector<std::int64_t> outer;
    if (e.index_domain) {
        // the first `count` values of the declared index domain, which may be open above
        auto d = *e.index_domain;
        for (auto& r : d.ranges)
            if (r.is_range && r.lo && !r.hi) {
                auto lo = num(*r.lo);
                r.hi = ast::int_lit(*lo + static_cast<std::int64_t>(count));
            }
        auto ks = keys_of(d);
        if (!ks || ks->size() < count)
            throw std::runtime_error("reference: comprehension index too small");
        outer.assign(ks->begin(), ks->begin() + static_cast<std::ptrdiff_t>(count));
    }
    else
        outer = one_to(count);
    std::vector<std::vector<std::int64_t>> keys{outer};
    keys.insert(keys.end(), inner.begin(), inner.end());
    return make_matrix(std::move(keys), base_bool, std::move(elems));
}

std::optional<RVal> Reference::index(const Expr& e)
{
    auto m = matrix(*e.args[0]);
    if (!m)
        return std::nullopt;
    std::vector<std::optional<std::int64_t>> spec;
    for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (!e.args[i]) {
            spec.emplace_back();
            continue;
        }
        auto k = num(*e.args[i]);
        if (!k)
            return std::nullopt;
        spec.emplace_back(*k);
    }
    if (spec.size() != m->keys.size())
        throw std::runtime_error("reference: index arity");
    std::vector<std::size_t> pos(spec.size(), 0);
    for (std::size_t d = 0; d < spec.size(); ++d) {
        if (!spec[d])
            continue;
        auto it = std::find(m->keys[d].begin(), m->keys[d].end(), *spec[d]);
        if (it == m->keys[d].end())
            return std::nullopt;
        pos[d] = static_cast<std::size_t>(it - m->keys[d].begin());
    }
    // gather every cell matching the fixed positions, row-major
    std::vector<RVal> out;
    std::vector<std::vector<std::int64_t>> keys;
    for (std::size_t d = 0; d < spec.size(); ++d)
        if (!spec[d])
            keys.push_back(one_to(m->keys[d].size()));
    std::vector<std::size_t> at(spec.size(), 0);
    std::size_t total = m->elems.size();
    for (std::size_t off = 0; off < total; ++off) {
        std::size_t rem = off;
        bool match = true;
        for (std::size_t d = spec.size(); d-- > 0;) {
            at[d] = rem % m->keys[d].size();
            rem /= m->keys[d].size();
        }
        for (std::size_t d = 0; d < spec.size(); ++d)
            if (spec[d] && at[d] != pos[d])
                match = false;
        if (match)
            out.push_back(m->elems[off]);
    }
    if (e.kind == ExprKind::Index)
        return out.at(0);
    return make_matrix(std::move(keys), m->base_bool, std::move(out));
}

bool Reference::bool_value(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::BoolLit: return e.bool_value;
    case ExprKind::Ident: return lookup(e.name).b;
    case ExprKind::Unary: return !bool_value(*e.args[0]);
    case ExprKind::Index: {
        auto v = index(e);
        return v && v->b;
    }
    case ExprKind::InBounds: {
        auto m = matrix(*e.args[0]);
        if (!m)
            return false;
        for (std::size_t i = 1; i < e.args.size(); ++i) {
            if (!e.args[i])
                continue;
            auto k = num(*e.args[i]);
            if (!k)
                return false;
            auto& ks = m->keys[i - 1];
            if (std::find(ks.begin(), ks.end(), *k) == ks.end())
                return false;
        }
        return true;
    }
    case ExprKind::Quantifier: {
        auto dom = domain_values(*e.domain);
        if (!dom)
            return false;
        bool all = e.quant == QuantKind::ForAll;
        std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
            if (k == e.vars.size())
                return bool_value(*e.args[0]);
            for (const auto& x : *dom) {
                locals_.emplace_back(e.vars[k], x);
                bool r = rec(k + 1);
                locals_.pop_back();
                if (all && !r)
                    return false;
                if (!all && r)
                    return true;
            }
            return all;
        };
        return rec(0);
    }
    case ExprKind::Binary: {
        const Expr& a = *e.args[0];
        const Expr& b = *e.args[1];
        switch (e.binary) {
        case BinaryOp::And:
        case BinaryOp::Comma: {
            bool x = bool_value(a);
            bool y = bool_value(b);
            return x && y;
        }
        case BinaryOp::Or: {
            bool x = bool_value(a);
            bool y = bool_value(b);
            return x || y;
        }
        case BinaryOp::Imp: {
            bool x = bool_value(a);
            bool y = bool_value(b);
            return !x || y;
        }
        case BinaryOp::Iff: return bool_value(a) == bool_value(b);
        case BinaryOp::In: {
            auto x = num(a);
            if (!x)
                return false;
            std::set<std::int64_t> s;
            if (b.kind == ExprKind::SetDomain) {
                auto vs = keys_of(*b.domain);
                if (!vs)
                    return false;
                s.insert(vs->begin(), vs->end());
            }
            else if (b.kind == ExprKind::Call && b.builtin == Builtin::ToSet) {
                auto vs = ints(*b.args[0]);
                if (!vs)
                    return false;
                s.insert(vs->begin(), vs->end());
            }
            else
                throw std::runtime_error("reference: unsupported set operand");
            return s.count(*x) > 0;
        }
        case BinaryOp::LexLt:
        case BinaryOp::LexLe:
        case BinaryOp::LexGt:
        case BinaryOp::LexGe: {
            auto x = ints(a);
            auto y = ints(b);
            if (!x || !y)
                return false;
            bool less = std::lexicographical_compare(x->begin(), x->end(), y->begin(), y->end());
            bool greater = std::lexicographical_compare(y->begin(), y->end(), x->begin(), x->end());
            switch (e.binary) {
            case BinaryOp::LexLt: return less;
            case BinaryOp::LexLe: return !greater;
            case BinaryOp::LexGt: return greater;
            default: return !less;
            }
        }
        default: break;
        }
        // comparisons
        auto va = eval(a);
        auto vb = eval(b);
        if (!va || !vb)
            return false;
        if (va->k == K::Mat || vb->k == K::Mat) {
            if (va->k != K::Mat || vb->k != K::Mat)
                throw std::runtime_error("reference: mixed comparison");
            auto x = seq(*va);
            auto y = seq(*vb);
            if (x.size() != y.size())
                throw std::runtime_error("reference: unequal lengths");
            bool eq = x == y;
            if (e.binary == BinaryOp::Eq)
                return eq;
            if (e.binary == BinaryOp::Ne)
                return !eq;
            throw std::runtime_error("reference: matrix ordering");
        }
        std::int64_t x = va->as_int();
        std::int64_t y = vb->as_int();
        switch (e.binary) {
        case BinaryOp::Eq: return x == y;
        case BinaryOp::Ne: return x != y;
        case BinaryOp::Lt: return x < y;
        case BinaryOp::Le: return x <= y;
        case BinaryOp::Gt: return x > y;
        case BinaryOp::Ge: return x >= y;
        default: throw std::runtime_error("reference: unexpected operator");
        }
    }
    case ExprKind::Call: {
        std::vector<std::optional<RVal>> args;
        for (const auto& a : e.args)
            args.push_back(eval(*a));
        for (const auto& a : args)
            if (!a)
                return false;
        auto xs = seq(*args[0]);
        auto count = [&](std::int64_t v) {
            return static_cast<std::int64_t>(std::count(xs.begin(), xs.end(), v));
        };
        switch (e.builtin) {
        case Builtin::AllDiff: {
            std::set<std::int64_t> s(xs.begin(), xs.end());
            return s.size() == xs.size();
        }
        case Builtin::AllDiffExcept: {
            std::int64_t except = args[1]->as_int();
            std::set<std::int64_t> s;
            for (auto v : xs)
                if (v != except && !s.insert(v).second)
                    return false;
            return true;
        }
        case Builtin::Gcc: {
            auto vals = seq(*args[1]);
            auto cs = seq(*args[2]);
            if (vals.size() != cs.size())
                throw std::runtime_error("reference: gcc lengths");
            for (std::size_t i = 0; i < vals.size(); ++i)
                if (count(vals[i]) != cs[i])
                    return false;
            return true;
        }
        case Builtin::AtLeast:
        case Builtin::AtMost: {
            auto cs = seq(*args[1]);
            auto vals = seq(*args[2]);
            if (vals.size() != cs.size())
                throw std::runtime_error("reference: count lengths");
            for (std::size_t i = 0; i < vals.size(); ++i) {
                auto n = count(vals[i]);
                if (e.builtin == Builtin::AtLeast ? n < cs[i] : n > cs[i])
                    return false;
            }
            return true;
        }
        case Builtin::Table: {
            const RVal& t = *args[1];
            auto flat = seq(t);
            std::size_t width = t.keys.size() == 2 ? t.keys[1].size() : 0;
            if (width != xs.size())
                return flat.empty() && xs.empty();
            for (std::size_t r = 0; r + width <= flat.size(); r += width)
                if (std::equal(xs.begin(), xs.end(), flat.begin() + static_cast<std::ptrdiff_t>(r)))
                    return true;
            return false;
        }
        case Builtin::And:
            return std::all_of(xs.begin(), xs.end(), [](auto v) { return v != 0; });
        case Builtin::Or:
            return std::any_of(xs.begin(), xs.end(), [](auto v) { return v != 0; });
        default: throw std::runtime_error("reference: unexpected builtin");
        }
    }
    default: throw std::runtime_error("reference: unexpected boolean node");
    }
}

std::optional<RVal> Reference::int_value(const Expr& e)
{
    auto I = [](std::int64_t v) { return std::optional<RVal>(RVal::integer(v)); };
    switch (e.kind) {
    case ExprKind::IntLit: return I(e.int_value);
    case ExprKind::Ident: return lookup(e.name);
    case ExprKind::MatrixLit: {
        std::vector<RVal> elems;
        std::vector<std::vector<std::int64_t>> inner;
        bool base_bool = false;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            auto v = eval(*e.args[i]);
            if (!v)
                return std::nullopt;
            if (v->k == K::Mat) {
                if (i > 0 && v->keys != inner)
                    throw std::runtime_error("reference: ragged matrix");
                inner = v->keys;
                base_bool = v->base_bool;
                for (auto& x : v->elems)
                    elems.push_back(x);
            }
            else {
                base_bool = v->k == K::Bool;
                elems.push_back(*v);
            }
        }
        std::vector<std::int64_t> outer;
        if (e.index_domain) {
            auto ks = keys_of(*e.index_domain);
            if (!ks)
                return std::nullopt;
            outer = *ks;
        }
        else
            outer = one_to(e.args.size());
        std::vector<std::vector<std::int64_t>> keys{outer};
        keys.insert(keys.end(), inner.begin(), inner.end());
        return make_matrix(std::move(keys), base_bool, std::move(elems));
    }
    case ExprKind::Comprehension: return comprehension(e);
    case ExprKind::Index:
    case ExprKind::Slice: return index(e);
    case ExprKind::Unary: {
        if (e.unary == UnaryOp::ToInt)
            return I(bool_value(*e.args[0]) ? 1 : 0);
        auto x = num(*e.args[0]);
        if (!x)
            return std::nullopt;
        if (e.unary == UnaryOp::Neg)
            return I(checked(-static_cast<__int128>(*x)));
        return I(checked(*x < 0 ? -static_cast<__int128>(*x) : *x));
    }
    case ExprKind::Binary: {
        auto x = num(*e.args[0]);
        auto y = num(*e.args[1]);
        if (!x || !y)
            return std::nullopt;
        __int128 a = *x;
        __int128 b = *y;
        switch (e.binary) {
        case BinaryOp::Add: return I(checked(a + b));
        case BinaryOp::Sub: return I(checked(a - b));
        case BinaryOp::Mul: return I(checked(a * b));
        case BinaryOp::Div:
            if (*y == 0)
                return std::nullopt;
            return I(fdiv(*x, *y));
        case BinaryOp::Mod:
            if (*y == 0)
                return std::nullopt;
            return I(fmod(*x, *y));
        case BinaryOp::Pow: {
            auto p = power(*x, *y);
            if (!p)
                return std::nullopt;
            return I(*p);
        }
        default: throw std::runtime_error("reference: unexpected arithmetic operator");
        }
    }
    case ExprKind::Quantifier: {
        auto dom = domain_values(*e.domain);
        if (!dom)
            return std::nullopt;
        __int128 total = 0;
        bool undefined = false;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (undefined)
                return;
            if (k == e.vars.size()) {
                auto v = num(*e.args[0]);
                if (!v)
                    undefined = true;
                else
                    total = checked(total + *v);
                return;
            }
            for (const auto& x : *dom) {
                locals_.emplace_back(e.vars[k], x);
                rec(k + 1);
                locals_.pop_back();
            }
        };
        rec(0);
        if (undefined)
            return std::nullopt;
        return I(checked(total));
    }
    case ExprKind::Call: {
        switch (e.builtin) {
        case Builtin::ToInt: return I(bool_value(*e.args[0]) ? 1 : 0);
        case Builtin::Factorial: {
            auto x = num(*e.args[0]);
            if (!x || *x < 0 || *x > 20)
                return std::nullopt;
            std::int64_t r = 1;
            for (std::int64_t k = 2; k <= *x; ++k)
                r *= k;
            return I(r);
        }
        case Builtin::Popcount: {
            auto x = num(*e.args[0]);
            if (!x)
                return std::nullopt;
            return I(std::popcount(static_cast<std::uint64_t>(*x)));
        }
        case Builtin::Min:
        case Builtin::Max: {
            std::vector<std::int64_t> xs;
            if (e.args.size() == 2) {
                auto a = num(*e.args[0]);
                auto b = num(*e.args[1]);
                if (!a || !b)
                    return std::nullopt;
                xs = {*a, *b};
            }
            else {
                auto m = ints(*e.args[0]);
                if (!m)
                    return std::nullopt;
                xs = *m;
            }
            if (xs.empty())
                throw std::runtime_error("reference: min/max of empty matrix");
            return I(e.builtin == Builtin::Min ? *std::min_element(xs.begin(), xs.end())
                                               : *std::max_element(xs.begin(), xs.end()));
        }
        case Builtin::Sum:
        case Builtin::Product: {
            auto m = ints(*e.args[0]);
            if (!m)
                return std::nullopt;
            __int128 r = e.builtin == Builtin::Sum ? 0 : 1;
            for (auto v : *m)
                r = checked(e.builtin == Builtin::Sum ? r + v : r * v);
            return I(checked(r));
        }
        case Builtin::Flatten: {
            auto m = matrix(*e.args.back());
            if (!m)
                return std::nullopt;
            std::size_t n = m->keys.size() - 1;
            if (e.args.size() == 2) {
                auto k = num(*e.args[0]);
                n = static_cast<std::size_t>(*k);
            }
            if (n == 0)
                return m;
            std::size_t merged = 1;
            for (std::size_t d = 0; d <= n; ++d)
                merged *= m->keys[d].size();
            std::vector<std::vector<std::int64_t>> keys{one_to(merged)};
            keys.insert(keys.end(), m->keys.begin() + static_cast<std::ptrdiff_t>(n) + 1, m->keys.end());
            return make_matrix(std::move(keys), m->base_bool, m->elems);
        }
        case Builtin::ToSet: {
            auto m = ints(*e.args[0]);
            if (!m)
                return std::nullopt;
            RVal r;
            r.k = K::Set;
            r.set.insert(m->begin(), m->end());
            return r;
        }
        default: throw std::runtime_error("reference: unexpected builtin");
        }
    }
    default: throw std::runtime_error("reference: unsupported expression");
    }
}

std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& m)
{
    std::size_t n = m.size();
    if (n == 0)
        return 1;
    if (n == 1)
        return m[0][0];
    std::int64_t det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(row);
        }
        std::int64_t term = m[0][c] * determinant(minor);
        det += c % 2 == 0 ? term : -term;
    }
    return det;
}

} // namespace oracle
