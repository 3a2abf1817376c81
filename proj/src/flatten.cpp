#include "eprime/flatten.hpp"

#include "eprime/arith.hpp"

#include <algorithm>

namespace eprime {

namespace {
    using i128 = __int128;

    std::int64_t fit(i128 v, const char* what)
    {
        if (v < int_min || v > int_max)
            fail(ErrorKind::Overflow, {}, std::string("64-bit overflow in ") + what);
        return static_cast<std::int64_t>(v);
    }

    i128 floor_div128(i128 a, i128 b)
    {
        i128 q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    Flattener::Lin scaled(Flattener::Lin l, i128 k)
    {
        for (auto& [v, c] : l.terms)
            c *= k;
        l.c *= k;
        return l;
    }

    void merge(Flattener::Lin& into, const Flattener::Lin& from)
    {
        into.terms.insert(into.terms.end(), from.terms.begin(), from.terms.end());
        into.c += from.c;
    }

    // combines repeated variables and drops zero coefficients, keeping first-appearance order
    void normalize(Flattener::Lin& l)
    {
        std::vector<std::pair<int, i128>> out;
        std::unordered_map<int, std::size_t> at;
        for (const auto& [v, c] : l.terms) {
            auto [it, fresh] = at.emplace(v, out.size());
            if (fresh)
                out.emplace_back(v, c);
            else
                out[it->second].second += c;
        }
        std::erase_if(out, [](const auto& p) { return p.second == 0; });
        l.terms = std::move(out);
    }

    bool holds(i128 lhs, LinRel rel, i128 rhs)
    {
        switch (rel) {
        case LinRel::Eq: return lhs == rhs;
        case LinRel::Ne: return lhs != rhs;
        case LinRel::Le: return lhs <= rhs;
        }
        return false;
    }
}

Interval Flattener::bounds_of(int var) const
{
    const auto& d = csp_.vars[static_cast<std::size_t>(var)].dom;
    if (d.empty())
        return {0, 0};
    return {d.min(), d.max()};
}

Interval Flattener::bounds(const Lin& l) const
{
    i128 lo = l.c, hi = l.c;
    for (const auto& [v, c] : l.terms) {
        Interval b = bounds_of(v);
        i128 a = c * b.lo, z = c * b.hi;
        lo += std::min(a, z);
        hi += std::max(a, z);
    }
    return {arith::clamp(lo), arith::clamp(hi)};
}

int Flattener::aux(Interval b, bool is_bool)
{
    std::size_t k = 0;
    for (const auto& v : csp_.vars)
        k += v.is_aux ? 1 : 0;
    std::string name = "aux#" + std::to_string(k);
    if (origin_.valid())
        name += "@" + origin_.str();
    IntDomain dom = is_bool ? IntDomain::interval(0, 1) : IntDomain::interval(b.lo, b.hi);
    return csp_.add_var(std::move(name), std::move(dom), is_bool, true);
}

int Flattener::constant(std::int64_t v)
{
    if (auto it = consts_.find(v); it != consts_.end())
        return it->second;
    int id = csp_.add_var("const(" + std::to_string(v) + ")", IntDomain::interval(v, v), false, true);
    consts_.emplace(v, id);
    return id;
}

Lit Flattener::constant_lit(bool b)
{
    if (true_var_ < 0)
        true_var_ = csp_.add_var("true", IntDomain::interval(1, 1), true, true);
    return {true_var_, !b};
}

std::optional<bool> Flattener::lit_value(const Lit& l) const
{
    const auto& d = csp_.vars[static_cast<std::size_t>(l.var)].dom;
    if (d.empty() || d.min() != d.max())
        return std::nullopt;
    return (d.min() != 0) != l.neg;
}

void Flattener::restrict(int var, const IntDomain& allowed)
{
    auto& d = csp_.vars[static_cast<std::size_t>(var)].dom;
    d = d.intersect(allowed);
    if (d.empty())
        csp_.trivially_unsat = true;
}

void Flattener::post_clause(std::vector<Lit> lits)
{
    std::vector<Lit> out;
    for (const auto& l : lits) {
        auto v = lit_value(l);
        if (v && *v)
            return;
        if (v)
            continue;
        if (std::find(out.begin(), out.end(), !l) != out.end())
            return;
        if (std::find(out.begin(), out.end(), l) == out.end())
            out.push_back(l);
    }
    if (out.size() == 1) {
        restrict(out[0].var, IntDomain::interval(out[0].neg ? 0 : 1, out[0].neg ? 0 : 1));
        return;
    }
    if (out.empty())
        csp_.trivially_unsat = true;
    FlatConstraint c;
    c.kind = FlatKind::Clause;
    c.lits = std::move(out);
    csp_.constraints.push_back(std::move(c));
}

void Flattener::post_linear(Lin l, LinRel rel)
{
    normalize(l);
    i128 rhs = -l.c;
    if (l.terms.empty()) {
        if (!holds(0, rel, rhs))
            post_clause({});
        return;
    }
    Interval b = bounds(l);
    i128 lo = b.lo - l.c, hi = b.hi - l.c;
    if (!b.saturated()) {
        if (rel == LinRel::Le && hi <= rhs)
            return;
        if (rel == LinRel::Ne && (rhs < lo || rhs > hi))
            return;
    }
    if (l.terms.size() == 1) {
        auto [v, a] = l.terms[0];
        IntDomain allowed;
        switch (rel) {
        case LinRel::Eq:
            if (rhs % a == 0 && rhs / a >= int_min && rhs / a <= int_max)
                allowed = IntDomain::interval(static_cast<std::int64_t>(rhs / a), static_cast<std::int64_t>(rhs / a));
            break;
        case LinRel::Ne:
            if (rhs % a != 0 || rhs / a < int_min || rhs / a > int_max)
                return;
            allowed = IntDomain::unbounded().subtract(IntDomain::interval(
                static_cast<std::int64_t>(rhs / a), static_cast<std::int64_t>(rhs / a)));
            break;
        case LinRel::Le:
            if (a > 0) {
                i128 m = floor_div128(rhs, a);
                if (m < int_min)
                    allowed = IntDomain{};
                else
                    allowed = IntDomain::half_open(std::nullopt, arith::clamp(m));
            }
            else {
                i128 m = -floor_div128(rhs, -a); // ceil(rhs / a)
                if (m > int_max)
                    allowed = IntDomain{};
                else
                    allowed = IntDomain::half_open(arith::clamp(m), std::nullopt);
            }
            break;
        }
        restrict(v, allowed);
        return;
    }
    FlatConstraint c;
    c.kind = FlatKind::Linear;
    for (const auto& [v, a] : l.terms) {
        c.vars.push_back(v);
        c.coefs.push_back(fit(a, "a linear coefficient"));
    }
    c.rel = rel;
    c.rhs = fit(rhs, "a linear constant");
    csp_.constraints.push_back(std::move(c));
}

Lit Flattener::reify_linear(Lin l, LinRel rel)
{
    normalize(l);
    i128 rhs = -l.c;
    if (l.terms.empty())
        return constant_lit(holds(0, rel, rhs));
    Interval b = bounds(l);
    if (!b.saturated()) {
        i128 lo = b.lo - l.c, hi = b.hi - l.c;
        switch (rel) {
        case LinRel::Le:
            if (hi <= rhs)
                return constant_lit(true);
            if (lo > rhs)
                return constant_lit(false);
            break;
        case LinRel::Eq:
        case LinRel::Ne:
            if (rhs < lo || rhs > hi)
                return constant_lit(rel == LinRel::Ne);
            if (lo == hi)
                return constant_lit(rel == LinRel::Eq);
            break;
        }
    }
    // a single bool variable compared with a constant is that literal
    if (l.terms.size() == 1 && rel != LinRel::Le) {
        auto [v, a] = l.terms[0];
        const auto& fv = csp_.vars[static_cast<std::size_t>(v)];
        if (fv.is_bool && (rhs == 0 || rhs == a)) {
            bool is_one = rhs == a;
            return {v, is_one != (rel == LinRel::Eq)};
        }
    }
    FlatConstraint c;
    c.kind = FlatKind::Linear;
    for (const auto& [v, a] : l.terms) {
        c.vars.push_back(v);
        c.coefs.push_back(fit(a, "a linear coefficient"));
    }
    c.rel = rel;
    c.rhs = fit(rhs, "a linear constant");
    Lit r{aux({0, 1}, true), false};
    c.reif = r;
    csp_.constraints.push_back(std::move(c));
    return r;
}

std::vector<int> Flattener::vars_of(const std::vector<TermPtr>& ts, std::size_t from, std::size_t to)
{
    std::vector<int> out;
    for (std::size_t i = from; i < to; ++i)
        out.push_back(as_var(ts[i]));
    return out;
}

int Flattener::functional(FlatKind kind, std::vector<int> inputs, Interval out)
{
    int z = aux(out);
    FlatConstraint c;
    c.kind = kind;
    c.vars = std::move(inputs);
    c.vars.push_back(z);
    csp_.constraints.push_back(std::move(c));
    return z;
}

int Flattener::as_var(const TermPtr& t)
{
    if (t->op == TermOp::Var)
        return t->var;
    if (t->is_const())
        return constant(t->value);
    if (auto it = var_memo_.find(t.get()); it != var_memo_.end())
        return it->second;
    Lin l = linear(t);
    normalize(l);
    int v;
    if (l.terms.size() == 1 && l.terms[0].second == 1 && l.c == 0)
        v = l.terms[0].first;
    else if (l.terms.empty())
        v = constant(fit(l.c, "a constant"));
    else {
        Interval b = bounds(l);
        v = aux(b);
        Lin eq = l;
        eq.terms.emplace_back(v, -1);
        post_linear(std::move(eq), LinRel::Eq);
    }
    var_memo_.emplace(t.get(), v);
    keep_.push_back(t);
    return v;
}

Flattener::Lin Flattener::linear(const TermPtr& t)
{
    Lin out;
    if (t->is_bool && t->op != TermOp::Var) {
        Lit l = reify(t);
        if (auto v = lit_value(l))
            out.c = *v ? 1 : 0;
        else if (l.neg) {
            out.c = 1;
            out.terms.emplace_back(l.var, -1);
        }
        else
            out.terms.emplace_back(l.var, 1);
        return out;
    }
    auto arg = [&](std::size_t i) { return as_var(t->args[i]); };
    switch (t->op) {
    case TermOp::Const: out.c = t->value; return out;
    case TermOp::Var: out.terms.emplace_back(t->var, 1); return out;
    case TermOp::Neg: return scaled(linear(t->args[0]), -1);
    case TermOp::Add:
        for (const auto& a : t->args)
            merge(out, linear(a));
        return out;
    case TermOp::Mul: {
        const auto& a = t->args[0];
        const auto& b = t->args[1];
        if (a->is_const())
            return scaled(linear(b), a->value);
        if (b->is_const())
            return scaled(linear(a), b->value);
        int x = arg(0), y = arg(1);
        out.terms.emplace_back(functional(FlatKind::Times, {x, y}, interval::mul(bounds_of(x), bounds_of(y))), 1);
        return out;
    }
    case TermOp::Div:
    case TermOp::Mod:
    case TermOp::Pow: {
        int x = arg(0), y = arg(1);
        Interval bx = bounds_of(x), by = bounds_of(y);
        FlatKind k = t->op == TermOp::Div ? FlatKind::Div : t->op == TermOp::Mod ? FlatKind::Mod : FlatKind::Pow;
        Interval r = k == FlatKind::Div ? interval::div(bx, by) : k == FlatKind::Mod ? interval::mod(bx, by) : interval::pow(bx, by);
        out.terms.emplace_back(functional(k, {x, y}, r), 1);
        return out;
    }
    case TermOp::Abs: {
        int x = arg(0);
        out.terms.emplace_back(functional(FlatKind::Abs, {x}, interval::abs(bounds_of(x))), 1);
        return out;
    }
    case TermOp::Min:
    case TermOp::Max: {
        std::vector<int> xs = vars_of(t->args, 0, t->args.size());
        Interval r = bounds_of(xs[0]);
        for (std::size_t i = 1; i < xs.size(); ++i)
            r = t->op == TermOp::Min ? interval::min(r, bounds_of(xs[i])) : interval::max(r, bounds_of(xs[i]));
        out.terms.emplace_back(functional(t->op == TermOp::Min ? FlatKind::Min : FlatKind::Max, std::move(xs), r), 1);
        return out;
    }
    default: break;
    }
    fail(ErrorKind::Internal, origin_, "cannot linearize term " + to_string(*t));
}

namespace {
    // a - b as a linear form, shifted so that `rel 0` expresses the comparison
    LinRel comparison(TermOp op, Flattener::Lin& l)
    {
        switch (op) {
        case TermOp::Eq: return LinRel::Eq;
        case TermOp::Ne: return LinRel::Ne;
        case TermOp::Lt: l.c += 1; return LinRel::Le;
        default: return LinRel::Le;
        }
    }
}

Lit Flattener::reify(const TermPtr& t)
{
    if (!t->is_bool)
        fail(ErrorKind::Internal, origin_, "reifying a non-boolean term " + to_string(*t));
    if (t->is_const())
        return constant_lit(t->value != 0);
    if (t->op == TermOp::Var)
        return {t->var, false};
    if (t->op == TermOp::Not)
        return !reify(t->args[0]);
    if (auto it = lit_memo_.find(t.get()); it != lit_memo_.end())
        return it->second;
    Lit r;
    switch (t->op) {
    case TermOp::And:
    case TermOp::Or:
    case TermOp::Imp: {
        bool is_and = t->op == TermOp::And;
        std::vector<Lit> parts;
        if (t->op == TermOp::Imp)
            parts = {!reify(t->args[0]), reify(t->args[1])};
        else
            for (const auto& a : t->args)
                parts.push_back(reify(a));
        // with or-form parts p: r <-> (p1 \/ ... \/ pn); and is the dual over negations
        std::vector<Lit> ps;
        bool decided = false;
        for (auto p : parts) {
            if (is_and)
                p = !p;
            auto v = lit_value(p);
            if (v && *v) {
                decided = true;
                break;
            }
            if (!v)
                ps.push_back(p);
        }
        if (decided)
            r = constant_lit(!is_and);
        else if (ps.empty())
            r = constant_lit(is_and);
        else if (ps.size() == 1)
            r = is_and ? !ps[0] : ps[0];
        else {
            Lit o{aux({0, 1}, true), false};
            std::vector<Lit> big{!o};
            for (const auto& p : ps) {
                post_clause({o, !p});
                big.push_back(p);
            }
            post_clause(std::move(big));
            r = is_and ? !o : o;
        }
        break;
    }
    case TermOp::Eq:
    case TermOp::Ne:
    case TermOp::Lt:
    case TermOp::Le: {
        Lin l = linear(t->args[0]);
        merge(l, scaled(linear(t->args[1]), -1));
        LinRel rel = comparison(t->op, l);
        r = reify_linear(std::move(l), rel);
        break;
    }
    case TermOp::InSet: {
        int x = as_var(t->args[0]);
        const auto& d = csp_.vars[static_cast<std::size_t>(x)].dom;
        if (d.subtract(*t->set).empty())
            r = constant_lit(true);
        else if (d.intersect(*t->set).empty())
            r = constant_lit(false);
        else {
            FlatConstraint c;
            c.kind = FlatKind::InSet;
            c.vars = {x};
            c.set = *t->set;
            r = {aux({0, 1}, true), false};
            c.reif = r;
            csp_.constraints.push_back(std::move(c));
        }
        break;
    }
    default: r = reify(term::decompose(*t)); break;
    }
    lit_memo_.emplace(t.get(), r);
    keep_.push_back(t);
    return r;
}

void Flattener::post_global(const Term& t)
{
    FlatConstraint c;
    switch (t.op) {
    case TermOp::AllDiff: c.kind = FlatKind::AllDiff; break;
    case TermOp::AllDiffExcept: c.kind = FlatKind::AllDiffExcept; break;
    case TermOp::Gcc: c.kind = FlatKind::Gcc; break;
    case TermOp::AtLeast: c.kind = FlatKind::AtLeast; break;
    case TermOp::AtMost: c.kind = FlatKind::AtMost; break;
    case TermOp::Table: c.kind = FlatKind::Table; break;
    case TermOp::Lex: c.kind = FlatKind::Lex; break;
    default: fail(ErrorKind::Internal, origin_, "not a global constraint");
    }
    c.vars = vars_of(t.args, 0, t.args.size());
    c.split = t.split;
    c.strict = t.strict;
    c.vals = t.vals;
    c.counts = t.counts;
    if (t.op == TermOp::Table) {
        for (const auto& row : *t.tuples) {
            bool inside = true;
            for (std::size_t k = 0; k < row.size() && inside; ++k)
                inside = csp_.vars[static_cast<std::size_t>(c.vars[k])].dom.contains(row[k]);
            if (inside)
                c.tuples.push_back(row);
        }
        if (c.tuples.empty()) {
            post_clause({});
            return;
        }
    }
    csp_.constraints.push_back(std::move(c));
}

void Flattener::post(const TermPtr& t)
{
    if (!t->is_bool)
        fail(ErrorKind::Internal, origin_, "posting a non-boolean term " + to_string(*t));
    switch (t->op) {
    case TermOp::Const:
        if (!t->value)
            post_clause({});
        return;
    case TermOp::And:
        for (const auto& a : t->args)
            post(a);
        return;
    case TermOp::Or: {
        std::vector<Lit> lits;
        for (const auto& a : t->args)
            lits.push_back(reify(a));
        post_clause(std::move(lits));
        return;
    }
    case TermOp::Imp:
        post_clause({!reify(t->args[0]), reify(t->args[1])});
        return;
    case TermOp::Eq:
    case TermOp::Ne:
    case TermOp::Lt:
    case TermOp::Le: {
        Lin l = linear(t->args[0]);
        merge(l, scaled(linear(t->args[1]), -1));
        LinRel rel = comparison(t->op, l);
        post_linear(std::move(l), rel);
        return;
    }
    case TermOp::InSet: {
        int x = as_var(t->args[0]);
        restrict(x, *t->set);
        return;
    }
    case TermOp::AllDiff:
    case TermOp::AllDiffExcept:
    case TermOp::Gcc:
    case TermOp::AtLeast:
    case TermOp::AtMost:
    case TermOp::Table:
    case TermOp::Lex: post_global(*t); return;
    default: post_clause({reify(t)}); return;
    }
}

} // namespace eprime
