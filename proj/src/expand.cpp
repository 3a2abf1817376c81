#include "eprime/expand.hpp"

#include "eprime/flatten.hpp"
#include "eprime/undefined.hpp"

#include <algorithm>
#include <unordered_set>

namespace eprime {

Sym to_sym(const Value& v)
{
    switch (v.kind()) {
    case Value::Kind::Int: return Sym::of(term::constant(v.as_int()));
    case Value::Kind::Bool: return Sym::of(term::boolean(v.as_bool()));
    case Value::Kind::Matrix: {
        const auto& m = v.as_matrix();
        std::vector<TermPtr> xs;
        xs.reserve(m.elems.size());
        for (const auto& x : m.elems)
            xs.push_back(x.is_bool() ? term::boolean(x.as_bool()) : term::constant(x.to_int()));
        return Sym::of(TermMatrix(m.index, std::move(xs)));
    }
    case Value::Kind::Set: return {nullptr, nullptr, std::make_shared<const IntDomain>(v.as_set())};
    }
    return {};
}

namespace {
    TermPtr default_term(BaseType b) { return b == BaseType::Bool ? term::boolean(false) : term::constant(0); }

    const TermMatrix& need_matrix(const Sym& s, Pos pos)
    {
        if (!s.matrix)
            fail(ErrorKind::Internal, pos, "expected a matrix");
        return *s.matrix;
    }
}

Value Expander::ground(const Expr& e)
{
    auto v = eval_ground(e, env_);
    if (!v)
        fail(ErrorKind::Expand, e.pos, "expression is undefined");
    return std::move(*v);
}

std::vector<std::int64_t> Expander::ground_ints(const Expr& e)
{
    Value v = ground(e);
    std::vector<std::int64_t> out;
    for (const auto& x : v.as_matrix().elems)
        out.push_back(x.to_int());
    return out;
}

TermPtr Expander::expand_scalar(const Expr& e)
{
    Sym s = expand(e);
    if (!s.scalar)
        fail(ErrorKind::Internal, e.pos, "expected a scalar expression");
    return s.scalar;
}

TermMatrix Expander::expand_matrix(const Expr& e)
{
    return need_matrix(expand(e), e.pos);
}

std::vector<TermPtr> Expander::elements(const Expr& e)
{
    return expand_matrix(e).elems;
}

Sym Expander::build(Domain ix, std::vector<Sym> elems, const Type& t, Pos pos)
{
    if (t.dims <= 1) {
        std::vector<TermPtr> xs;
        xs.reserve(elems.size());
        for (auto& s : elems)
            xs.push_back(std::move(s.scalar));
        return Sym::of(TermMatrix({std::move(ix)}, std::move(xs)));
    }
    std::vector<TermMatrix> rows;
    rows.reserve(elems.size());
    for (auto& s : elems)
        rows.push_back(need_matrix(s, pos));
    std::vector<Domain> inner;
    if (rows.empty())
        inner.assign(static_cast<std::size_t>(t.dims - 1), Domain::contiguous(0));
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].index == rows[0].index))
            fail(ErrorKind::Expand, pos, "irregular matrix: rows have different index domains");
    return Sym::of(TermMatrix::stack(std::move(ix), rows, std::move(inner)));
}

TermPtr Expander::expand_quantifier(const Expr& q)
{
    auto dom = enumerate_binder_domain(*q.domain, env_, q.pos);
    if (!dom) {
        if (q.quant == QuantKind::Sum)
            fail(ErrorKind::Expand, q.pos, "quantifier domain is undefined");
        return term::boolean(false);
    }
    std::vector<TermPtr> parts;
    for_each_binding(env_, q.vars, *dom, [&] {
        parts.push_back(expand_scalar(*q.args[0]));
        return true;
    });
    switch (q.quant) {
    case QuantKind::ForAll: return term::and_(std::move(parts));
    case QuantKind::Exists: return term::or_(std::move(parts));
    case QuantKind::Sum: return term::add(std::move(parts));
    }
    return nullptr;
}

TermMatrix Expander::expand_comprehension(const Expr& c)
{
    std::vector<Sym> elems;
    auto rec = [&](auto& self, std::size_t g) -> void {
        if (g == c.generators.size()) {
            for (const auto& cond : c.conditions)
                if (!eval_bool(*cond, env_))
                    return;
            elems.push_back(expand(*c.args[0]));
            return;
        }
        const Generator& gen = c.generators[g];
        auto dom = enumerate_binder_domain(*gen.domain, env_, gen.pos);
        if (!dom)
            fail(ErrorKind::Expand, gen.pos, "generator domain is undefined");
        for_each_binding(env_, gen.vars, *dom, [&] {
            self(self, g + 1);
            return true;
        });
    };
    rec(rec, 0);
    std::optional<Domain> declared;
    if (c.index_domain) {
        declared = eval_domain(*c.index_domain, env_);
        if (!declared)
            fail(ErrorKind::Expand, c.pos, "comprehension index domain is undefined");
    }
    Domain ix = comprehension_index(declared, elems.size(), c.pos);
    return need_matrix(build(std::move(ix), std::move(elems), c.type, c.pos), c.pos);
}

std::optional<std::vector<std::optional<std::int64_t>>> Expander::keys(const Expr& e, const TermMatrix& m)
{
    std::vector<std::optional<std::int64_t>> out;
    for (std::size_t i = 1; i < e.args.size(); ++i) {
        if (!e.args[i]) {
            out.emplace_back();
            continue;
        }
        auto v = eval_ground(*e.args[i], env_);
        if (!v)
            return std::nullopt;
        out.emplace_back(index_key(m.index[i - 1], *v, e.args[i]->pos));
    }
    return out;
}

Sym Expander::expand(const Expr& e)
{
    if (!e.decision) {
        if (e.kind == ExprKind::Ident && env_.is_local(e.name))
            return to_sym(*env_.lookup(e.name));
        return to_sym(ground(e));
    }
    switch (e.kind) {
    case ExprKind::Ident: {
        auto it = decisions_.find(e.name);
        if (it == decisions_.end())
            fail(ErrorKind::Internal, e.pos, "'" + e.name + "' is not a decision variable");
        return it->second;
    }
    case ExprKind::MatrixLit: {
        std::vector<Sym> elems;
        elems.reserve(e.args.size());
        for (const auto& a : e.args)
            elems.push_back(expand(*a));
        Domain ix = Domain::contiguous(elems.size());
        if (e.index_domain) {
            auto d = eval_domain(*e.index_domain, env_);
            if (!d)
                fail(ErrorKind::Expand, e.pos, "matrix index domain is undefined");
            if (!d->finite() || d->atomic_size() != elems.size())
                fail(ErrorKind::Expand, e.pos, "index domain " + d->str() + " does not have "
                        + std::to_string(elems.size()) + " values");
            ix = *d;
        }
        return build(std::move(ix), std::move(elems), e.type, e.pos);
    }
    case ExprKind::Unary: {
        TermPtr a = expand_scalar(*e.args[0]);
        switch (e.unary) {
        case UnaryOp::Neg: return Sym::of(term::neg(a));
        case UnaryOp::Not: return Sym::of(term::not_(a));
        case UnaryOp::Abs: return Sym::of(term::abs(a));
        case UnaryOp::ToInt: return Sym::of(a);
        }
        break;
    }
    case ExprKind::Binary: return binary(e);
    case ExprKind::Quantifier: return Sym::of(expand_quantifier(e));
    case ExprKind::Comprehension: return Sym::of(expand_comprehension(e));
    case ExprKind::Index:
    case ExprKind::Slice:
    case ExprKind::InBounds: {
        TermMatrix m = expand_matrix(*e.args[0]);
        auto ks = keys(e, m);
        if (e.kind == ExprKind::InBounds) {
            bool inside = ks.has_value();
            for (std::size_t d = 0; inside && d < ks->size(); ++d)
                if ((*ks)[d] && !m.index[d].position(*(*ks)[d]))
                    inside = false;
            return Sym::of(term::boolean(inside));
        }
        if (e.kind == ExprKind::Index) {
            const TermPtr* x = nullptr;
            if (ks) {
                std::vector<std::int64_t> key;
                for (auto& k : *ks)
                    key.push_back(*k);
                x = index_matrix(m, std::span<const std::int64_t>(key));
            }
            if (!x) {
                if (!e.total)
                    fail(ErrorKind::Expand, e.pos, "matrix index out of bounds");
                return Sym::of(default_term(e.type.base));
            }
            return Sym::of(*x);
        }
        std::optional<TermMatrix> r;
        if (ks)
            r = slice_matrix(m, std::span<const std::optional<std::int64_t>>(*ks));
        if (!r) {
            if (!e.total)
                fail(ErrorKind::Expand, e.pos, "matrix slice out of bounds");
            std::vector<Domain> ix;
            for (std::size_t d = 1; d < e.args.size(); ++d)
                if (!e.args[d])
                    ix.push_back(Domain::contiguous(m.index[d - 1].atomic_size()));
            std::size_t n = TermMatrix::cell_count(ix);
            return Sym::of(TermMatrix(std::move(ix), std::vector<TermPtr>(n, default_term(e.type.base))));
        }
        return Sym::of(std::move(*r));
    }
    case ExprKind::Call: return call(e);
    default: break;
    }
    fail(ErrorKind::Internal, e.pos, "unhandled decision expression");
}

Sym Expander::binary(const Expr& e)
{
    const Expr& l = *e.args[0];
    const Expr& r = *e.args[1];
    BinaryOp op = e.binary;
    if (is_lex(op)) {
        auto xs = elements(l);
        auto ys = elements(r);
        if (op == BinaryOp::LexGt || op == BinaryOp::LexGe)
            std::swap(xs, ys);
        return Sym::of(term::lex(std::move(xs), std::move(ys), op == BinaryOp::LexLt || op == BinaryOp::LexGt));
    }
    if (op == BinaryOp::In) {
        TermPtr a = expand_scalar(l);
        Value s = ground(r);
        return Sym::of(term::in_set(a, s.as_set()));
    }
    if ((op == BinaryOp::Eq || op == BinaryOp::Ne) && l.type.is_matrix()) {
        auto xs = expand_matrix(l).flatten_all().elems;
        auto ys = expand_matrix(r).flatten_all().elems;
        if (xs.size() != ys.size())
            fail(ErrorKind::Expand, e.pos, "comparing matrices of different lengths " + std::to_string(xs.size()) + " and "
                    + std::to_string(ys.size()));
        std::vector<TermPtr> parts;
        for (std::size_t i = 0; i < xs.size(); ++i)
            parts.push_back(term::eq(xs[i], ys[i]));
        TermPtr all = term::and_(std::move(parts));
        return Sym::of(op == BinaryOp::Eq ? all : term::not_(all));
    }
    TermPtr a = expand_scalar(l);
    TermPtr b = expand_scalar(r);
    switch (op) {
    case BinaryOp::Add: return Sym::of(term::add({a, b}));
    case BinaryOp::Sub: return Sym::of(term::sub(a, b));
    case BinaryOp::Mul: return Sym::of(term::mul(a, b));
    case BinaryOp::Div: return Sym::of(term::div(a, b));
    case BinaryOp::Mod: return Sym::of(term::mod(a, b));
    case BinaryOp::Pow: return Sym::of(term::pow(a, b));
    case BinaryOp::And:
    case BinaryOp::Comma: return Sym::of(term::and_({a, b}));
    case BinaryOp::Or: return Sym::of(term::or_({a, b}));
    case BinaryOp::Imp: return Sym::of(term::imp(a, b));
    case BinaryOp::Iff:
    case BinaryOp::Eq: return Sym::of(term::eq(a, b));
    case BinaryOp::Ne: return Sym::of(term::ne(a, b));
    case BinaryOp::Lt: return Sym::of(term::lt(a, b));
    case BinaryOp::Le: return Sym::of(term::le(a, b));
    case BinaryOp::Gt: return Sym::of(term::lt(b, a));
    case BinaryOp::Ge: return Sym::of(term::le(b, a));
    default: break;
    }
    fail(ErrorKind::Internal, e.pos, "unhandled binary operator");
}

Sym Expander::call(const Expr& e)
{
    const auto& args = e.args;
    switch (e.builtin) {
    case Builtin::AllDiff: return Sym::of(term::alldiff(elements(*args[0])));
    case Builtin::AllDiffExcept: return Sym::of(term::alldiff_except(elements(*args[0]), ground(*args[1]).to_int()));
    case Builtin::Gcc: return Sym::of(term::gcc(elements(*args[0]), ground_ints(*args[1]), elements(*args[2])));
    case Builtin::AtLeast:
        return Sym::of(term::atleast(elements(*args[0]), ground_ints(*args[1]), ground_ints(*args[2])));
    case Builtin::AtMost:
        return Sym::of(term::atmost(elements(*args[0]), ground_ints(*args[1]), ground_ints(*args[2])));
    case Builtin::Table: {
        Value t = ground(*args[1]);
        const auto& m = t.as_matrix();
        Tuples tuples;
        std::size_t rows = m.index[0].atomic_size();
        for (std::size_t k = 0; k < rows; ++k) {
            std::vector<std::int64_t> row;
            for (const auto& x : m.row(k).elems)
                row.push_back(x.to_int());
            tuples.push_back(std::move(row));
        }
        return Sym::of(term::table(elements(*args[0]), std::move(tuples)));
    }
    case Builtin::Min:
    case Builtin::Max: {
        std::vector<TermPtr> xs;
        if (args.size() == 2)
            xs = {expand_scalar(*args[0]), expand_scalar(*args[1])};
        else
            xs = elements(*args[0]);
        if (xs.empty())
            fail(ErrorKind::Expand, e.pos, std::string(spelling(e.builtin)) + " of an empty matrix");
        return Sym::of(e.builtin == Builtin::Min ? term::min(std::move(xs)) : term::max(std::move(xs)));
    }
    case Builtin::Sum: return Sym::of(term::add(elements(*args[0])));
    case Builtin::Product: {
        TermPtr acc = term::constant(1);
        for (auto& x : elements(*args[0]))
            acc = term::mul(acc, x);
        return Sym::of(acc);
    }
    case Builtin::And: return Sym::of(term::and_(elements(*args[0])));
    case Builtin::Or: return Sym::of(term::or_(elements(*args[0])));
    case Builtin::Flatten: {
        TermMatrix m = expand_matrix(*args.back());
        std::optional<std::size_t> n;
        if (args.size() == 2)
            n = static_cast<std::size_t>(ground(*args[0]).to_int());
        return Sym::of(flatten(n, m));
    }
    default: break;
    }
    fail(ErrorKind::Internal, e.pos, std::string(spelling(e.builtin)) + " cannot take decision arguments");
}

namespace {
    std::string cell_name(const std::string& base, const std::vector<Domain>& index, std::size_t offset)
    {
        std::vector<std::string> keys(index.size());
        for (std::size_t d = index.size(); d-- > 0;) {
            std::size_t n = static_cast<std::size_t>(index[d].atomic_size());
            keys[d] = key_value(index[d], index[d].key_at(offset % n)).str();
            offset /= n;
        }
        std::string out = base + "[";
        for (std::size_t d = 0; d < keys.size(); ++d)
            out += (d ? "," : "") + keys[d];
        return out + "]";
    }
}

FlatCSP flatten_model(const TypedModel& model, const Instance& inst)
{
    FlatCSP csp;
    std::unordered_map<std::string, Sym> decisions;
    for (const auto& d : model.decls) {
        if (d.kind != StmtKind::Find)
            continue;
        const Domain& dom = inst.find_domains.at(d.name);
        DecisionGroup g{d.name, dom, {}};
        if (dom.is_matrix()) {
            const Domain& base = dom.base();
            std::size_t n = TermMatrix::cell_count(dom.index());
            std::vector<TermPtr> cells;
            for (std::size_t k = 0; k < n; ++k) {
                int v = csp.add_var(cell_name(d.name, dom.index(), k), base.as_int_set(), base.is_bool(), false);
                g.vars.push_back(v);
                cells.push_back(term::var(v, base.is_bool()));
            }
            decisions.emplace(d.name, Sym::of(TermMatrix(dom.index(), std::move(cells))));
        }
        else {
            int v = csp.add_var(d.name, dom.as_int_set(), dom.is_bool(), false);
            g.vars.push_back(v);
            decisions.emplace(d.name, Sym::of(term::var(v, dom.is_bool())));
        }
        csp.decisions.push_back(std::move(g));
    }
    for (const auto& v : csp.vars)
        if (v.dom.empty())
            csp.trivially_unsat = true;

    Expander ex(inst, std::move(decisions));
    Flattener fl(csp);
    // errors raised below the expression level carry no position; attach the constraint's
    auto located = [](Pos pos, auto&& f) {
        try {
            f();
        }
        catch (const Error& e) {
            if (e.pos().valid())
                throw;
            fail(e.kind(), pos, e.detail());
        }
    };
    for (const auto& c : model.constraints)
        located(c->pos, [&] {
            fl.set_origin(c->pos);
            GuardResult g = guard_undefinedness(c);
            for (const auto& p : g.pending)
                fl.post(ex.expand_scalar(*p));
            fl.post(ex.expand_scalar(*g.expr));
        });

    if (model.objective) located(model.objective->pos, [&] {
        const Objective& o = *model.objective;
        fl.set_origin(o.pos);
        GuardResult g = guard_undefinedness(o.expr);
        if (!g.pending.empty())
            csp.notes.push_back("definedness conditions of the objective are posted as top-level constraints");
        for (const auto& p : g.pending)
            fl.post(ex.expand_scalar(*p));
        int v = fl.as_var(ex.expand_scalar(*g.expr));
        csp.objective = FlatObjective{o.maximising, v};
    });

    std::unordered_set<int> seen;
    for (const auto& b : model.branching) {
        Sym s = ex.expand(*b);
        std::vector<TermPtr> ts;
        if (s.matrix)
            ts = s.matrix->flatten_all().elems;
        else if (s.scalar)
            ts = {s.scalar};
        for (const auto& t : ts) {
            if (t->op != TermOp::Var)
                fail(ErrorKind::Expand, b->pos, "branching on entries must be decision variables");
            if (seen.insert(t->var).second)
                csp.branch_order.push_back(t->var);
        }
    }
    if (model.heuristic) {
        const std::string& h = *model.heuristic;
        if (h == "static" || h == "sdf")
            csp.heuristic = h;
        else
            csp.notes.push_back("heuristic " + h + " is not supported; using static");
    }
    return csp;
}

} // namespace eprime
