#include "eprime/flat.hpp"

#include <sstream>

namespace eprime {

const char* to_string(FlatKind k)
{
    switch (k) {
    case FlatKind::Linear: return "linear";
    case FlatKind::Times: return "times";
    case FlatKind::Div: return "div";
    case FlatKind::Mod: return "mod";
    case FlatKind::Pow: return "pow";
    case FlatKind::Abs: return "abs";
    case FlatKind::Min: return "min";
    case FlatKind::Max: return "max";
    case FlatKind::Clause: return "clause";
    case FlatKind::InSet: return "in";
    case FlatKind::AllDiff: return "alldiff";
    case FlatKind::AllDiffExcept: return "alldiff_except";
    case FlatKind::Gcc: return "gcc";
    case FlatKind::AtLeast: return "atleast";
    case FlatKind::AtMost: return "atmost";
    case FlatKind::Table: return "table";
    case FlatKind::Lex: return "lex";
    }
    return "?";
}

int FlatCSP::add_var(std::string name, IntDomain dom, bool is_bool, bool is_aux)
{
    vars.push_back(FlatVar{std::move(name), std::move(dom), is_bool, is_aux});
    return static_cast<int>(vars.size()) - 1;
}

std::size_t FlatCSP::decision_count() const
{
    std::size_t n = 0;
    for (const auto& v : vars)
        n += v.is_aux ? 0 : 1;
    return n;
}

namespace {
    void list(std::ostream& os, const std::vector<std::int64_t>& xs)
    {
        os << "[";
        for (std::size_t i = 0; i < xs.size(); ++i)
            os << (i ? "," : "") << xs[i];
        os << "]";
    }
}

std::string FlatCSP::dump() const
{
    std::ostringstream os;
    auto name = [&](int v) -> const std::string& { return vars[static_cast<std::size_t>(v)].name; };
    auto lit = [&](const Lit& l) { return (l.neg ? "!" : "") + name(l.var); };
    auto names = [&](std::size_t from, std::size_t to, const std::vector<int>& vs) {
        os << "[";
        for (std::size_t i = from; i < to; ++i)
            os << (i > from ? "," : "") << name(vs[i]);
        os << "]";
    };
    for (const auto& v : vars) {
        os << (v.is_aux ? "aux " : "var ") << v.name << " ";
        if (v.is_bool)
            os << (v.dom == IntDomain::interval(0, 1) ? "bool" : "bool" + v.dom.str().substr(3));
        else
            os << v.dom.str();
        os << "\n";
    }
    for (const auto& c : constraints) {
        os << "con " << to_string(c.kind) << " ";
        switch (c.kind) {
        case FlatKind::Linear:
            for (std::size_t i = 0; i < c.vars.size(); ++i)
                os << (i ? " + " : "") << c.coefs[i] << "*" << name(c.vars[i]);
            if (c.vars.empty())
                os << "0";
            os << (c.rel == LinRel::Eq ? " = " : c.rel == LinRel::Ne ? " != " : " <= ") << c.rhs;
            break;
        case FlatKind::Times:
        case FlatKind::Div:
        case FlatKind::Mod:
        case FlatKind::Pow:
            os << name(c.vars[2]) << " = " << name(c.vars[0]) << ", " << name(c.vars[1]);
            break;
        case FlatKind::Abs: os << name(c.vars[1]) << " = " << name(c.vars[0]); break;
        case FlatKind::Min:
        case FlatKind::Max:
            os << name(c.vars.back()) << " = ";
            names(0, c.vars.size() - 1, c.vars);
            break;
        case FlatKind::Clause:
            for (std::size_t i = 0; i < c.lits.size(); ++i)
                os << (i ? " \\/ " : "") << lit(c.lits[i]);
            if (c.lits.empty())
                os << "false";
            break;
        case FlatKind::InSet: os << name(c.vars[0]) << " " << c.set.str(); break;
        case FlatKind::AllDiff: names(0, c.vars.size(), c.vars); break;
        case FlatKind::AllDiffExcept:
            names(0, c.vars.size(), c.vars);
            os << " except " << c.vals[0];
            break;
        case FlatKind::Gcc:
            names(0, c.split, c.vars);
            os << " vals ";
            list(os, c.vals);
            os << " counts ";
            names(c.split, c.vars.size(), c.vars);
            break;
        case FlatKind::AtLeast:
        case FlatKind::AtMost:
            names(0, c.vars.size(), c.vars);
            os << " counts ";
            list(os, c.counts);
            os << " vals ";
            list(os, c.vals);
            break;
        case FlatKind::Table:
            names(0, c.vars.size(), c.vars);
            os << " tuples " << c.tuples.size();
            break;
        case FlatKind::Lex:
            names(0, c.split, c.vars);
            os << (c.strict ? " < " : " <= ");
            names(c.split, c.vars.size(), c.vars);
            break;
        }
        if (c.reif)
            os << " <-> " << lit(*c.reif);
        os << "\n";
    }
    if (objective)
        os << (objective->maximise ? "maximise " : "minimise ") << name(objective->var) << "\n";
    if (!branch_order.empty()) {
        os << "branch " << heuristic << " ";
        names(0, branch_order.size(), branch_order);
        os << "\n";
    }
    if (trivially_unsat)
        os << "unsat\n";
    for (const auto& n : notes)
        os << "note " << n << "\n";
    return os.str();
}

} // namespace eprime
