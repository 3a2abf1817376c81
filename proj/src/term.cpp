#include "eprime/term.hpp"

#include "eprime/arith.hpp"

#include <algorithm>
#include <sstream>

namespace eprime {

bool same_term(const Term& a, const Term& b)
{
    if (&a == &b)
        return true;
    if (a.op != b.op || a.value != b.value || a.var != b.var || a.args.size() != b.args.size() || a.split != b.split
        || a.strict != b.strict || a.vals != b.vals || a.counts != b.counts)
        return false;
    if ((a.set == nullptr) != (b.set == nullptr) || (a.set && !(*a.set == *b.set)))
        return false;
    if ((a.tuples == nullptr) != (b.tuples == nullptr) || (a.tuples && *a.tuples != *b.tuples))
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_term(*a.args[i], *b.args[i]))
            return false;
    return true;
}

namespace {
    const char* op_name(TermOp op)
    {
        switch (op) {
        case TermOp::Const: return "const";
        case TermOp::Var: return "var";
        case TermOp::Neg: return "neg";
        case TermOp::Abs: return "abs";
        case TermOp::Add: return "add";
        case TermOp::Mul: return "mul";
        case TermOp::Div: return "div";
        case TermOp::Mod: return "mod";
        case TermOp::Pow: return "pow";
        case TermOp::Min: return "min";
        case TermOp::Max: return "max";
        case TermOp::Not: return "not";
        case TermOp::And: return "and";
        case TermOp::Or: return "or";
        case TermOp::Imp: return "imp";
        case TermOp::Eq: return "eq";
        case TermOp::Ne: return "ne";
        case TermOp::Lt: return "lt";
        case TermOp::Le: return "le";
        case TermOp::InSet: return "in";
        case TermOp::Lex: return "lex";
        case TermOp::AllDiff: return "allDiff";
        case TermOp::AllDiffExcept: return "alldifferent_except";
        case TermOp::Gcc: return "gcc";
        case TermOp::AtLeast: return "atleast";
        case TermOp::AtMost: return "atmost";
        case TermOp::Table: return "table";
        }
        return "?";
    }
}

std::string to_string(const Term& t)
{
    if (t.op == TermOp::Const)
        return t.is_bool ? (t.value ? "true" : "false") : std::to_string(t.value);
    if (t.op == TermOp::Var)
        return "v" + std::to_string(t.var);
    std::ostringstream os;
    os << op_name(t.op);
    if (t.op == TermOp::Lex && t.strict)
        os << "<";
    os << "(";
    for (std::size_t i = 0; i < t.args.size(); ++i)
        os << (i ? ", " : "") << to_string(*t.args[i]);
    if (t.set)
        os << "; " << t.set->str();
    os << ")";
    return os.str();
}

namespace term {
    namespace {
        std::shared_ptr<Term> node(TermOp op, bool is_bool, std::vector<TermPtr> args = {})
        {
            auto t = std::make_shared<Term>();
            t->op = op;
            t->is_bool = is_bool;
            t->args = std::move(args);
            return t;
        }

        std::int64_t must(std::optional<std::int64_t> v, const char* what)
        {
            if (!v)
                fail(ErrorKind::Overflow, {}, std::string("64-bit overflow in ") + what);
            return *v;
        }

        // quadratic duplicate removal is skipped for long argument lists
        constexpr std::size_t dedup_limit = 64;

        bool all_const(const std::vector<TermPtr>& xs)
        {
            return std::all_of(xs.begin(), xs.end(), [](const TermPtr& x) { return x->is_const(); });
        }

        TermPtr fold_or_keep(std::shared_ptr<Term> t)
        {
            if (all_const(t->args))
                return decompose(*t);
            return t;
        }
    }

    TermPtr constant(std::int64_t v)
    {
        auto t = node(TermOp::Const, false);
        t->value = v;
        return t;
    }

    TermPtr boolean(bool b)
    {
        auto t = node(TermOp::Const, true);
        t->value = b ? 1 : 0;
        return t;
    }

    TermPtr var(int id, bool is_bool)
    {
        auto t = node(TermOp::Var, is_bool);
        t->var = id;
        return t;
    }

    TermPtr neg(TermPtr a)
    {
        if (a->is_const())
            return constant(must(arith::neg(a->value), "negation"));
        if (a->op == TermOp::Neg)
            return a->args[0];
        return node(TermOp::Neg, false, {std::move(a)});
    }

    TermPtr abs(TermPtr a)
    {
        if (a->is_const())
            return constant(must(arith::abs(a->value), "absolute value"));
        if (a->is_bool || a->op == TermOp::Abs)
            return a;
        return node(TermOp::Abs, false, {std::move(a)});
    }

    TermPtr add(std::vector<TermPtr> xs)
    {
        std::vector<TermPtr> parts;
        std::int64_t c = 0;
        for (auto& x : xs) {
            if (x->is_const())
                c = must(arith::add(c, x->value), "addition");
            else if (x->op == TermOp::Add) {
                for (const auto& y : x->args) {
                    if (y->is_const())
                        c = must(arith::add(c, y->value), "addition");
                    else
                        parts.push_back(y);
                }
            }
            else
                parts.push_back(std::move(x));
        }
        if (c != 0 || parts.empty())
            parts.push_back(constant(c));
        if (parts.size() == 1)
            return parts.front();
        return node(TermOp::Add, false, std::move(parts));
    }

    TermPtr sub(TermPtr a, TermPtr b)
    {
        return add({std::move(a), neg(std::move(b))});
    }

    TermPtr mul(TermPtr a, TermPtr b)
    {
        if (a->is_const() && b->is_const())
            return constant(must(arith::mul(a->value, b->value), "multiplication"));
        if (b->is_const())
            std::swap(a, b);
        if (a->is_const()) {
            if (a->value == 0)
                return constant(0);
            if (a->value == 1)
                return b;
        }
        return node(TermOp::Mul, false, {std::move(a), std::move(b)});
    }

    TermPtr div(TermPtr a, TermPtr b)
    {
        if (b->is_const() && b->value == 0)
            return constant(0);
        if (a->is_const() && b->is_const()) {
            if (a->value == int_min && b->value == -1)
                fail(ErrorKind::Overflow, {}, "64-bit overflow in division");
            return constant(arith::floor_div(a->value, b->value));
        }
        if (b->is_const() && b->value == 1)
            return a;
        return node(TermOp::Div, false, {std::move(a), std::move(b)});
    }

    TermPtr mod(TermPtr a, TermPtr b)
    {
        if (b->is_const() && (b->value == 0 || b->value == 1 || b->value == -1))
            return constant(0);
        if (a->is_const() && b->is_const())
            return constant(arith::floor_mod(a->value, b->value));
        return node(TermOp::Mod, false, {std::move(a), std::move(b)});
    }

    TermPtr pow(TermPtr a, TermPtr b)
    {
        if (a->is_const() && b->is_const()) {
            if (!arith::pow_defined(a->value, b->value))
                return constant(0);
            return constant(must(arith::pow(a->value, b->value), "power"));
        }
        if (b->is_const()) {
            if (b->value < 0)
                return constant(0);
            if (b->value == 1)
                return a;
        }
        return node(TermOp::Pow, false, {std::move(a), std::move(b)});
    }

    namespace {
        TermPtr extremum(TermOp op, std::vector<TermPtr> xs)
        {
            if (xs.empty())
                fail(ErrorKind::Expand, {}, std::string(op == TermOp::Min ? "min" : "max") + " of an empty matrix");
            std::vector<TermPtr> parts;
            std::optional<std::int64_t> c;
            for (auto& x : xs) {
                if (x->is_const())
                    c = !c ? x->value : op == TermOp::Min ? std::min(*c, x->value) : std::max(*c, x->value);
                else if (parts.size() > dedup_limit
                    || std::none_of(parts.begin(), parts.end(), [&](const TermPtr& p) { return same_term(*p, *x); }))
                    parts.push_back(std::move(x));
            }
            if (c)
                parts.push_back(constant(*c));
            if (parts.size() == 1)
                return parts.front();
            return node(op, false, std::move(parts));
        }
    }

    TermPtr min(std::vector<TermPtr> xs) { return extremum(TermOp::Min, std::move(xs)); }
    TermPtr max(std::vector<TermPtr> xs) { return extremum(TermOp::Max, std::move(xs)); }

    TermPtr not_(TermPtr a)
    {
        switch (a->op) {
        case TermOp::Const: return boolean(a->value == 0);
        case TermOp::Not: return a->args[0];
        case TermOp::Eq: return ne(a->args[0], a->args[1]);
        case TermOp::Ne: return eq(a->args[0], a->args[1]);
        case TermOp::Lt: return le(a->args[1], a->args[0]);
        case TermOp::Le: return lt(a->args[1], a->args[0]);
        default: return node(TermOp::Not, true, {std::move(a)});
        }
    }

    namespace {
        TermPtr connective(TermOp op, std::vector<TermPtr> xs)
        {
            bool is_and = op == TermOp::And;
            std::vector<TermPtr> parts;
            auto push = [&](const TermPtr& x) {
                if (parts.size() > dedup_limit
                    || std::none_of(parts.begin(), parts.end(), [&](const TermPtr& p) { return same_term(*p, *x); }))
                    parts.push_back(x);
            };
            for (auto& x : xs) {
                if (x->is_const()) {
                    if ((x->value != 0) != is_and)
                        return boolean(!is_and);
                    continue;
                }
                if (x->op == op) {
                    for (const auto& y : x->args)
                        push(y);
                }
                else
                    push(x);
            }
            if (parts.empty())
                return boolean(is_and);
            if (parts.size() == 1)
                return parts.front();
            return node(op, true, std::move(parts));
        }
    }

    TermPtr and_(std::vector<TermPtr> xs) { return connective(TermOp::And, std::move(xs)); }
    TermPtr or_(std::vector<TermPtr> xs) { return connective(TermOp::Or, std::move(xs)); }

    TermPtr imp(TermPtr a, TermPtr b)
    {
        if (a->is_const())
            return a->value ? b : boolean(true);
        if (b->is_const())
            return b->value ? boolean(true) : not_(a);
        if (same_term(*a, *b))
            return boolean(true);
        return node(TermOp::Imp, true, {std::move(a), std::move(b)});
    }

    namespace {
        TermPtr compare(TermOp op, TermPtr a, TermPtr b)
        {
            if (a->is_const() && b->is_const()) {
                std::int64_t x = a->value, y = b->value;
                switch (op) {
                case TermOp::Eq: return boolean(x == y);
                case TermOp::Ne: return boolean(x != y);
                case TermOp::Lt: return boolean(x < y);
                default: return boolean(x <= y);
                }
            }
            if (same_term(*a, *b))
                return boolean(op == TermOp::Eq || op == TermOp::Le);
            // a bool compared with a bool constant is the bool itself or its negation
            if ((op == TermOp::Eq || op == TermOp::Ne) && a->is_bool && b->is_bool) {
                if (a->is_const())
                    std::swap(a, b);
                if (b->is_const()) {
                    bool positive = (b->value != 0) == (op == TermOp::Eq);
                    return positive ? a : not_(a);
                }
            }
            return node(op, true, {std::move(a), std::move(b)});
        }
    }

    TermPtr eq(TermPtr a, TermPtr b) { return compare(TermOp::Eq, std::move(a), std::move(b)); }
    TermPtr ne(TermPtr a, TermPtr b) { return compare(TermOp::Ne, std::move(a), std::move(b)); }
    TermPtr lt(TermPtr a, TermPtr b) { return compare(TermOp::Lt, std::move(a), std::move(b)); }
    TermPtr le(TermPtr a, TermPtr b) { return compare(TermOp::Le, std::move(a), std::move(b)); }

    TermPtr in_set(TermPtr a, IntDomain s)
    {
        if (a->is_const())
            return boolean(s.contains(a->value));
        if (s.empty())
            return boolean(false);
        auto t = node(TermOp::InSet, true, {std::move(a)});
        t->set = std::make_shared<const IntDomain>(std::move(s));
        return t;
    }

    TermPtr lex(std::vector<TermPtr> xs, std::vector<TermPtr> ys, bool strict)
    {
        auto t = node(TermOp::Lex, true);
        t->split = xs.size();
        t->strict = strict;
        t->args = std::move(xs);
        t->args.insert(t->args.end(), ys.begin(), ys.end());
        return fold_or_keep(std::move(t));
    }

    TermPtr alldiff(std::vector<TermPtr> xs)
    {
        if (xs.size() <= 1)
            return boolean(true);
        return fold_or_keep(node(TermOp::AllDiff, true, std::move(xs)));
    }

    TermPtr alldiff_except(std::vector<TermPtr> xs, std::int64_t except)
    {
        if (xs.size() <= 1)
            return boolean(true);
        auto t = node(TermOp::AllDiffExcept, true, std::move(xs));
        t->vals = {except};
        return fold_or_keep(std::move(t));
    }

    TermPtr gcc(std::vector<TermPtr> xs, std::vector<std::int64_t> vals, std::vector<TermPtr> counts)
    {
        if (vals.size() != counts.size())
            fail(ErrorKind::Expand, {}, "gcc has " + std::to_string(vals.size()) + " values but " + std::to_string(counts.size())
                    + " counts");
        auto t = node(TermOp::Gcc, true, std::move(xs));
        t->split = t->args.size();
        t->args.insert(t->args.end(), counts.begin(), counts.end());
        t->vals = std::move(vals);
        return fold_or_keep(std::move(t));
    }

    namespace {
        TermPtr counting(TermOp op, std::vector<TermPtr> xs, std::vector<std::int64_t> counts, std::vector<std::int64_t> vals)
        {
            if (vals.size() != counts.size())
                fail(ErrorKind::Expand, {}, std::string(op == TermOp::AtLeast ? "atleast" : "atmost") + " has "
                        + std::to_string(vals.size()) + " values but " + std::to_string(counts.size()) + " counts");
            auto t = node(op, true, std::move(xs));
            t->counts = std::move(counts);
            t->vals = std::move(vals);
            return fold_or_keep(std::move(t));
        }
    }

    TermPtr atleast(std::vector<TermPtr> xs, std::vector<std::int64_t> counts, std::vector<std::int64_t> vals)
    {
        return counting(TermOp::AtLeast, std::move(xs), std::move(counts), std::move(vals));
    }

    TermPtr atmost(std::vector<TermPtr> xs, std::vector<std::int64_t> counts, std::vector<std::int64_t> vals)
    {
        return counting(TermOp::AtMost, std::move(xs), std::move(counts), std::move(vals));
    }

    TermPtr table(std::vector<TermPtr> xs, Tuples tuples)
    {
        for (const auto& row : tuples)
            if (row.size() != xs.size())
                fail(ErrorKind::Expand, {}, "table tuples have " + std::to_string(row.size()) + " columns but the scope has "
                        + std::to_string(xs.size()) + " variables");
        auto t = node(TermOp::Table, true, std::move(xs));
        t->tuples = std::make_shared<const Tuples>(std::move(tuples));
        return fold_or_keep(std::move(t));
    }

    TermPtr decompose(const Term& g)
    {
        const auto& a = g.args;
        switch (g.op) {
        case TermOp::AllDiff:
        case TermOp::AllDiffExcept: {
            std::vector<TermPtr> parts;
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i + 1; j < a.size(); ++j) {
                    TermPtr d = ne(a[i], a[j]);
                    if (g.op == TermOp::AllDiffExcept)
                        d = or_({d, eq(a[i], constant(g.vals[0]))});
                    parts.push_back(d);
                }
            return and_(std::move(parts));
        }
        case TermOp::Gcc:
        case TermOp::AtLeast:
        case TermOp::AtMost: {
            std::size_t nx = g.op == TermOp::Gcc ? g.split : a.size();
            std::vector<TermPtr> parts;
            for (std::size_t i = 0; i < g.vals.size(); ++i) {
                std::vector<TermPtr> hits;
                for (std::size_t k = 0; k < nx; ++k)
                    hits.push_back(eq(a[k], constant(g.vals[i])));
                TermPtr count = add(std::move(hits));
                if (g.op == TermOp::Gcc)
                    parts.push_back(eq(count, a[nx + i]));
                else if (g.op == TermOp::AtLeast)
                    parts.push_back(le(constant(g.counts[i]), count));
                else
                    parts.push_back(le(count, constant(g.counts[i])));
            }
            return and_(std::move(parts));
        }
        case TermOp::Table: {
            std::vector<TermPtr> rows;
            for (const auto& row : *g.tuples) {
                std::vector<TermPtr> cells;
                for (std::size_t k = 0; k < row.size(); ++k)
                    cells.push_back(eq(a[k], constant(row[k])));
                rows.push_back(and_(std::move(cells)));
            }
            return or_(std::move(rows));
        }
        case TermOp::Lex: {
            std::size_t n = g.split, m = a.size() - g.split;
            std::size_t common = std::min(n, m);
            TermPtr acc = boolean(g.strict ? n < m : n <= m);
            for (std::size_t i = common; i-- > 0;) {
                const TermPtr& x = a[i];
                const TermPtr& y = a[n + i];
                acc = or_({lt(x, y), and_({eq(x, y), acc})});
            }
            return acc;
        }
        default: break;
        }
        fail(ErrorKind::Internal, {}, "decompose applied to a non-global term");
    }
}

} // namespace eprime
