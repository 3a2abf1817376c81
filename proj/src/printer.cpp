#include "eprime/printer.hpp"

#include <sstream>

namespace eprime {

namespace {
    void print(std::ostream& os, const Expr& e);
    void print(std::ostream& os, const DomainAst& d);

    template <class Range, class Fn>
    void join(std::ostream& os, const Range& items, Fn&& fn, const char* sep = ", ")
    {
        bool first = true;
        for (const auto& item : items) {
            if (!first)
                os << sep;
            first = false;
            fn(item);
        }
    }

    void print_names(std::ostream& os, const std::vector<std::string>& names)
    {
        join(os, names, [&](const std::string& n) { os << n; });
    }

    void print(std::ostream& os, const Expr& e)
    {
        switch (e.kind) {
        case ExprKind::IntLit:
            if (e.int_value < 0)
                os << "(" << e.int_value << ")";
            else
                os << e.int_value;
            return;
        case ExprKind::BoolLit: os << (e.bool_value ? "true" : "false"); return;
        case ExprKind::Ident: os << e.name; return;
        case ExprKind::MatrixLit:
            os << "[";
            join(os, e.args, [&](const ExprPtr& x) { print(os, *x); });
            if (e.index_domain) {
                os << (e.args.empty() ? "; " : " ; ");
                print(os, *e.index_domain);
            }
            os << "]";
            return;
        case ExprKind::Unary:
            switch (e.unary) {
            case UnaryOp::Neg: os << "(-"; print(os, *e.args[0]); os << ")"; return;
            case UnaryOp::Not: os << "(!"; print(os, *e.args[0]); os << ")"; return;
            case UnaryOp::Abs: os << "|"; print(os, *e.args[0]); os << "|"; return;
            case UnaryOp::ToInt: os << "toInt("; print(os, *e.args[0]); os << ")"; return;
            }
            return;
        case ExprKind::Binary:
            os << "(";
            print(os, *e.args[0]);
            os << " " << spelling(e.binary) << (e.total && e.binary != BinaryOp::Comma ? "!" : "") << " ";
            print(os, *e.args[1]);
            os << ")";
            return;
        case ExprKind::Quantifier:
            os << "(" << (e.quant == QuantKind::ForAll ? "forAll" : e.quant == QuantKind::Exists ? "exists" : "sum") << " ";
            print_names(os, e.vars);
            os << " : ";
            print(os, *e.domain);
            os << " . ";
            print(os, *e.args[0]);
            os << ")";
            return;
        case ExprKind::Comprehension:
            os << "[";
            print(os, *e.args[0]);
            os << " | ";
            join(os, e.generators, [&](const Generator& g) {
                print_names(os, g.vars);
                os << " : ";
                print(os, *g.domain);
            });
            for (const auto& c : e.conditions) {
                os << ", ";
                print(os, *c);
            }
            if (e.index_domain) {
                os << " ; ";
                print(os, *e.index_domain);
            }
            os << "]";
            return;
        case ExprKind::Index:
        case ExprKind::Slice:
        case ExprKind::InBounds: {
            bool simple = e.args[0]->kind == ExprKind::Ident;
            if (e.kind == ExprKind::InBounds)
                os << "inBounds(";
            if (!simple)
                os << "(";
            print(os, *e.args[0]);
            if (!simple)
                os << ")";
            os << "[";
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                if (i > 1)
                    os << ", ";
                if (e.args[i])
                    print(os, *e.args[i]);
                else
                    os << "..";
            }
            os << "]";
            if (e.kind == ExprKind::InBounds)
                os << ")";
            return;
        }
        case ExprKind::Call:
            os << spelling(e.builtin) << "(";
            join(os, e.args, [&](const ExprPtr& x) { print(os, *x); });
            os << ")";
            return;
        case ExprKind::SetDomain:
            os << "(";
            print(os, *e.domain);
            os << ")";
            return;
        }
    }

    void print(std::ostream& os, const DomainAst& d)
    {
        switch (d.kind) {
        case DomainKind::Bool: os << "bool"; return;
        case DomainKind::Int:
            os << "int";
            if (d.unbounded)
                return;
            os << "(";
            join(os, d.ranges, [&](const RangeAst& r) {
                if (r.lo)
                    print(os, *r.lo);
                if (r.is_range) {
                    os << "..";
                    if (r.hi)
                        print(os, *r.hi);
                }
            });
            os << ")";
            return;
        case DomainKind::Matrix:
            os << "matrix indexed by [";
            join(os, d.index, [&](const DomainPtr& x) { print(os, *x); });
            os << "] of ";
            print(os, *d.base);
            return;
        case DomainKind::Named: os << d.name; return;
        case DomainKind::Binary:
            os << "(";
            print(os, *d.lhs);
            os << (d.op == DomainOp::Union ? " union " : d.op == DomainOp::Intersect ? " intersect " : " - ");
            print(os, *d.rhs);
            os << ")";
            return;
        }
    }

    template <class T>
    bool eq_ptr(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b)
    {
        if (!a || !b)
            return !a && !b;
        return structurally_equal(*a, *b);
    }

    template <class T>
    bool eq_list(const std::vector<std::shared_ptr<const T>>& a, const std::vector<std::shared_ptr<const T>>& b)
    {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!eq_ptr(a[i], b[i]))
                return false;
        return true;
    }
}

std::string to_string(const Expr& e)
{
    std::ostringstream os;
    print(os, e);
    return os.str();
}

std::string to_string(const DomainAst& d)
{
    std::ostringstream os;
    print(os, d);
    return os.str();
}

std::string to_string(const Statement& s)
{
    std::ostringstream os;
    auto list = [&](const std::vector<ExprPtr>& xs, const char* sep) {
        join(os, xs, [&](const ExprPtr& x) { print(os, *x); }, sep);
    };
    switch (s.kind) {
    case StmtKind::Header: os << "language ESSENCE' " << s.text; break;
    case StmtKind::Given:
    case StmtKind::Find:
        os << (s.kind == StmtKind::Given ? "given " : "find ");
        print_names(os, s.names);
        os << " : ";
        print(os, *s.domain);
        break;
    case StmtKind::Letting:
        os << "letting " << s.names[0];
        if (s.domain) {
            os << " : ";
            print(os, *s.domain);
        }
        os << " = ";
        print(os, *s.expr);
        break;
    case StmtKind::LettingDomain:
        os << "letting " << s.names[0] << " be domain ";
        print(os, *s.domain);
        break;
    case StmtKind::Where: os << "where "; list(s.exprs, ",\n    "); break;
    case StmtKind::Objective:
        os << (s.maximising ? "maximising " : "minimising ");
        print(os, *s.expr);
        break;
    case StmtKind::BranchingOn: os << "branching on ["; list(s.exprs, ", "); os << "]"; break;
    case StmtKind::Heuristic: os << "heuristic " << s.text; break;
    case StmtKind::SuchThat: os << "such that\n    "; list(s.exprs, ",\n    "); break;
    }
    return os.str();
}

std::string to_string(const SourceModel& m)
{
    std::string out;
    for (const auto& s : m.statements)
        out += to_string(s) + "\n";
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b)
{
    if (a.kind != b.kind || a.total != b.total)
        return false;
    switch (a.kind) {
    case ExprKind::IntLit: return a.int_value == b.int_value;
    case ExprKind::BoolLit: return a.bool_value == b.bool_value;
    case ExprKind::Ident: return a.name == b.name;
    case ExprKind::Unary:
        if (a.unary != b.unary)
            return false;
        break;
    case ExprKind::Binary:
        if (a.binary != b.binary)
            return false;
        break;
    case ExprKind::Call:
        if (a.builtin != b.builtin)
            return false;
        break;
    case ExprKind::Quantifier:
        if (a.quant != b.quant || a.vars != b.vars || !eq_ptr(a.domain, b.domain))
            return false;
        break;
    case ExprKind::Comprehension:
        if (a.generators.size() != b.generators.size() || !eq_list(a.conditions, b.conditions))
            return false;
        for (std::size_t i = 0; i < a.generators.size(); ++i)
            if (a.generators[i].vars != b.generators[i].vars
                || !eq_ptr(a.generators[i].domain, b.generators[i].domain))
                return false;
        break;
    case ExprKind::SetDomain:
        if (!eq_ptr(a.domain, b.domain))
            return false;
        break;
    default: break;
    }
    return eq_ptr(a.index_domain, b.index_domain) && eq_list(a.args, b.args);
}

bool structurally_equal(const DomainAst& a, const DomainAst& b)
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case DomainKind::Bool: return true;
    case DomainKind::Int:
        if (a.unbounded != b.unbounded || a.ranges.size() != b.ranges.size())
            return false;
        for (std::size_t i = 0; i < a.ranges.size(); ++i) {
            const auto& x = a.ranges[i];
            const auto& y = b.ranges[i];
            if (x.is_range != y.is_range || !eq_ptr(x.lo, y.lo) || !eq_ptr(x.hi, y.hi))
                return false;
        }
        return true;
    case DomainKind::Matrix: return eq_list(a.index, b.index) && eq_ptr(a.base, b.base);
    case DomainKind::Named: return a.name == b.name;
    case DomainKind::Binary: return a.op == b.op && eq_ptr(a.lhs, b.lhs) && eq_ptr(a.rhs, b.rhs);
    }
    return false;
}

} // namespace eprime
