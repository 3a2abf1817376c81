#include "eprime/typecheck.hpp"

#include "eprime/arith.hpp"

#include <algorithm>

namespace eprime {

const char* to_string(Category c)
{
    switch (c) {
    case Category::Decision: return "decision variable";
    case Category::Quantifier: return "quantifier variable";
    case Category::Parameter: return "parameter";
    case Category::Constant: return "constant";
    }
    return "?";
}

void TypeEnv::declare(Symbol sym)
{
    auto& scope = scopes_.back();
    if (scopes_.size() == 1) {
        auto it = scope.find(sym.name);
        if (it != scope.end())
            fail(ErrorKind::Type, sym.pos, "'" + sym.name + "' is already declared at " + it->second.pos.str());
    }
    std::string name = sym.name;
    scope.insert_or_assign(std::move(name), std::move(sym));
}

const Symbol* TypeEnv::lookup(const std::string& name) const
{
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        auto f = it->find(name);
        if (f != it->end())
            return &f->second;
    }
    return nullptr;
}

bool TypedModel::has_givens() const
{
    return std::any_of(decls.begin(), decls.end(), [](const Declaration& d) { return d.kind == StmtKind::Given; });
}

const Declaration* TypedModel::declaration(const std::string& name) const
{
    for (const auto& d : decls)
        if (d.name == name)
            return &d;
    return nullptr;
}

ExprPtr coerce_bool_to_int(ExprPtr e)
{
    if (!e->type.is_bool())
        return e;
    auto n = std::make_shared<Expr>();
    n->kind = ExprKind::Unary;
    n->unary = UnaryOp::ToInt;
    n->pos = e->pos;
    n->type = Type::integer();
    n->decision = e->decision;
    n->args.push_back(std::move(e));
    return n;
}

namespace {
    std::string describe(const Type& t) { return to_string(t); }

    class Checker {
    public:
        explicit Checker(TypeEnv& env) : env_(env) {}

        ExprPtr check(const Expr& e)
        {
            switch (e.kind) {
            case ExprKind::IntLit: {
                auto n = copy(e);
                n->type = Type::integer();
                return n;
            }
            case ExprKind::BoolLit: {
                auto n = copy(e);
                n->type = Type::boolean();
                return n;
            }
            case ExprKind::Ident: return identifier(e);
            case ExprKind::MatrixLit: return matrix_literal(e);
            case ExprKind::Unary: return unary(e);
            case ExprKind::Binary: return binary(e);
            case ExprKind::Quantifier: return quantifier(e);
            case ExprKind::Comprehension: return comprehension(e);
            case ExprKind::Index:
            case ExprKind::Slice:
            case ExprKind::InBounds: return index(e);
            case ExprKind::Call: return call(e);
            case ExprKind::SetDomain: {
                auto n = copy(e);
                Type vt;
                n->domain = domain(*e.domain, &vt);
                if (vt.is_matrix())
                    fail(ErrorKind::Type, e.pos, "a matrix domain cannot be used as a set");
                n->type = Type::set();
                return n;
            }
            }
            fail(ErrorKind::Internal, e.pos, "unhandled expression kind");
        }

        DomainPtr domain(const DomainAst& d, Type* value_type)
        {
            auto n = std::make_shared<DomainAst>(d);
            Type t;
            switch (d.kind) {
            case DomainKind::Bool: t = Type::boolean(); break;
            case DomainKind::Int: {
                t = Type::integer();
                for (auto& r : n->ranges) {
                    if (r.lo)
                        r.lo = ground_int(*r.lo, "domain bound");
                    if (r.hi)
                        r.hi = ground_int(*r.hi, "domain bound");
                }
                break;
            }
            case DomainKind::Matrix: {
                n->index.clear();
                for (const auto& ix : d.index) {
                    Type it;
                    n->index.push_back(domain(*ix, &it));
                    if (!it.is_scalar())
                        fail(ErrorKind::Type, ix->pos, "matrix index domains must be int or bool domains");
                }
                Type bt;
                n->base = domain(*d.base, &bt);
                if (!bt.is_scalar())
                    fail(ErrorKind::Type, d.base->pos, "the base domain of a matrix must be int or bool");
                t = Type::matrix(static_cast<int>(d.index.size()), bt.is_bool() ? BaseType::Bool : BaseType::Int);
                break;
            }
            case DomainKind::Named: {
                const Symbol* s = env_.lookup(d.name);
                if (!s)
                    fail(ErrorKind::Type, d.pos, "undeclared domain '" + d.name + "'");
                if (!s->is_domain)
                    fail(ErrorKind::Type, d.pos, "'" + d.name + "' is not a domain");
                t = s->type;
                break;
            }
            case DomainKind::Binary: {
                Type lt, rt;
                n->lhs = domain(*d.lhs, &lt);
                n->rhs = domain(*d.rhs, &rt);
                if (lt.is_matrix() || rt.is_matrix())
                    fail(ErrorKind::Type, d.pos, "domain operators apply to int or bool domains only");
                if (lt != rt)
                    fail(ErrorKind::Type, d.pos, "domain operator mixes " + describe(lt) + " and " + describe(rt) + " domains");
                t = lt;
                break;
            }
            }
            if (value_type)
                *value_type = t;
            return n;
        }

    private:
        TypeEnv& env_;

        static std::shared_ptr<Expr> copy(const Expr& e) { return std::make_shared<Expr>(e); }

        ExprPtr ground_int(const Expr& e, const char* what)
        {
            auto n = as_int(check(e), what);
            if (n->decision)
                fail(ErrorKind::Type, e.pos, std::string(what) + " may not contain decision variables");
            return n;
        }

        static ExprPtr as_int(ExprPtr e, const char* what)
        {
            if (e->type.is_bool())
                return coerce_bool_to_int(std::move(e));
            if (!e->type.is_int())
                fail(ErrorKind::Type, e->pos, std::string(what) + " must be an integer expression, found " + describe(e->type));
            return e;
        }

        static ExprPtr as_bool(ExprPtr e, const char* what)
        {
            if (!e->type.is_bool())
                fail(ErrorKind::Type, e->pos, std::string(what) + " must be a boolean expression, found " + describe(e->type));
            return e;
        }

        static void non_decision(const ExprPtr& e, const std::string& what)
        {
            if (e->decision)
                fail(ErrorKind::Type, e->pos, what + " may not contain decision variables");
        }

        static void one_dim(const ExprPtr& e, const std::string& what)
        {
            if (!e->type.is_matrix() || e->type.dims != 1)
                fail(ErrorKind::Type, e->pos, what + " must be a one-dimensional matrix, found " + describe(e->type));
        }

        ExprPtr identifier(const Expr& e)
        {
            const Symbol* s = env_.lookup(e.name);
            if (!s)
                fail(ErrorKind::Type, e.pos, "undeclared identifier '" + e.name + "'");
            if (s->is_domain)
                fail(ErrorKind::Type, e.pos, "domain '" + e.name + "' used as an expression");
            auto n = copy(e);
            n->type = s->type;
            n->decision = s->category == Category::Decision;
            return n;
        }

        ExprPtr matrix_literal(const Expr& e)
        {
            auto n = copy(e);
            n->args.clear();
            for (const auto& a : e.args)
                n->args.push_back(check(*a));
            if (e.index_domain) {
                Type it;
                n->index_domain = domain(*e.index_domain, &it);
                if (!it.is_scalar())
                    fail(ErrorKind::Type, e.index_domain->pos, "a matrix literal index domain must be int or bool");
            }
            if (n->args.empty()) {
                if (!e.index_domain)
                    fail(ErrorKind::Type, e.pos, "empty matrix literal needs an explicit index domain");
                n->type = Type::matrix(1, BaseType::Int);
                return n;
            }
            bool any_int = false, any_bool = false, any_matrix = false;
            for (const auto& a : n->args) {
                any_int |= a->type.is_int();
                any_bool |= a->type.is_bool();
                any_matrix |= a->type.is_matrix();
                if (a->type.kind == Type::Kind::Set)
                    fail(ErrorKind::Type, a->pos, "sets cannot be matrix elements");
            }
            if (any_matrix && (any_int || any_bool))
                fail(ErrorKind::Type, e.pos, "matrix literal mixes matrices and scalars");
            if (any_matrix) {
                Type first = n->args.front()->type;
                for (const auto& a : n->args)
                    if (a->type.dims != first.dims)
                        fail(ErrorKind::Type, a->pos, "matrix literal rows have different dimension counts");
                bool mixed = std::any_of(n->args.begin(), n->args.end(), [&](const ExprPtr& a) { return a->type.base != first.base; });
                n->type = Type::matrix(first.dims + 1, mixed ? BaseType::Int : first.base);
            }
            else if (any_int && any_bool) {
                for (auto& a : n->args)
                    a = coerce_bool_to_int(a);
                n->type = Type::matrix(1, BaseType::Int);
            }
            else
                n->type = Type::matrix(1, any_bool ? BaseType::Bool : BaseType::Int);
            n->decision = std::any_of(n->args.begin(), n->args.end(), [](const ExprPtr& a) { return a->decision; });
            return n;
        }

        ExprPtr unary(const Expr& e)
        {
            auto n = copy(e);
            auto a = check(*e.args[0]);
            switch (e.unary) {
            case UnaryOp::Neg:
            case UnaryOp::Abs:
                a = as_int(a, e.unary == UnaryOp::Neg ? "operand of unary -" : "operand of |..|");
                n->type = Type::integer();
                break;
            case UnaryOp::Not:
                a = as_bool(a, "operand of !");
                n->type = Type::boolean();
                break;
            case UnaryOp::ToInt:
                a = as_bool(a, "argument of toInt");
                n->type = Type::integer();
                break;
            }
            n->decision = a->decision;
            n->args = {a};
            return n;
        }

        ExprPtr binary(const Expr& e)
        {
            auto n = copy(e);
            auto a = check(*e.args[0]);
            ExprPtr b;
            if (e.binary == BinaryOp::In) {
                auto rhs = check(*e.args[1]);
                if (rhs->type.kind != Type::Kind::Set)
                    fail(ErrorKind::Type, rhs->pos, "right operand of 'in' must be a domain or toSet(..)");
                non_decision(rhs, "the right operand of 'in'");
                a = as_int(a, "left operand of 'in'");
                b = rhs;
                n->type = Type::boolean();
            }
            else {
                b = check(*e.args[1]);
                BinaryOp op = e.binary;
                if (op == BinaryOp::Comma)
                    n->binary = op = BinaryOp::And;
                if (is_arithmetic(op)) {
                    a = as_int(a, "arithmetic operand");
                    b = as_int(b, "arithmetic operand");
                    n->type = Type::integer();
                }
                else if (is_logical(op)) {
                    a = as_bool(a, "logical operand");
                    b = as_bool(b, "logical operand");
                    n->type = Type::boolean();
                }
                else if (is_lex(op)) {
                    one_dim(a, "operand of a lex comparison");
                    one_dim(b, "operand of a lex comparison");
                    n->type = Type::boolean();
                }
                else if (op == BinaryOp::Eq || op == BinaryOp::Ne) {
                    const Type& ta = a->type;
                    const Type& tb = b->type;
                    if (ta.is_matrix() || tb.is_matrix()) {
                        one_dim(a, "matrix operand of = or !=");
                        one_dim(b, "matrix operand of = or !=");
                    }
                    else if (ta.kind == Type::Kind::Set || tb.kind == Type::Kind::Set) {
                        if (ta != tb)
                            fail(ErrorKind::Type, e.pos, "a set can only be compared with a set");
                    }
                    else if (!(ta.is_bool() && tb.is_bool())) {
                        a = as_int(a, "comparison operand");
                        b = as_int(b, "comparison operand");
                    }
                    n->type = Type::boolean();
                }
                else {
                    a = as_int(a, "comparison operand");
                    b = as_int(b, "comparison operand");
                    n->type = Type::boolean();
                }
            }
            n->decision = a->decision || b->decision;
            n->args = {a, b};
            return n;
        }

        Type bind_variables(const std::vector<std::string>& vars, const DomainAst& d, Pos pos, DomainPtr& out)
        {
            Type vt;
            out = domain(d, &vt);
            for (const auto& v : vars)
                env_.declare(Symbol{v, Category::Quantifier, vt, false, pos});
            return vt;
        }

        ExprPtr quantifier(const Expr& e)
        {
            auto n = copy(e);
            env_.push();
            bind_variables(e.vars, *e.domain, e.pos, n->domain);
            auto body = check(*e.args[0]);
            env_.pop();
            if (e.quant == QuantKind::Sum) {
                body = as_int(body, "body of sum");
                n->type = Type::integer();
            }
            else {
                body = as_bool(body, "quantifier body");
                n->type = Type::boolean();
            }
            n->decision = body->decision;
            n->args = {body};
            return n;
        }

        ExprPtr comprehension(const Expr& e)
        {
            auto n = copy(e);
            env_.push();
            n->generators.clear();
            for (const auto& g : e.generators) {
                Generator tg = g;
                bind_variables(g.vars, *g.domain, g.pos, tg.domain);
                n->generators.push_back(std::move(tg));
            }
            n->conditions.clear();
            for (const auto& c : e.conditions) {
                auto tc = as_bool(check(*c), "comprehension condition");
                non_decision(tc, "a comprehension condition");
                n->conditions.push_back(tc);
            }
            auto body = check(*e.args[0]);
            env_.pop();
            if (e.index_domain) {
                Type it;
                n->index_domain = domain(*e.index_domain, &it);
                if (!it.is_scalar())
                    fail(ErrorKind::Type, e.index_domain->pos, "a comprehension index domain must be int or bool");
            }
            if (body->type.is_matrix())
                n->type = Type::matrix(body->type.dims + 1, body->type.base);
            else if (body->type.is_scalar())
                n->type = Type::matrix(1, body->type.is_bool() ? BaseType::Bool : BaseType::Int);
            else
                fail(ErrorKind::Type, body->pos, "comprehension body must be a scalar or matrix expression");
            n->decision = body->decision;
            n->args = {body};
            return n;
        }

        ExprPtr index(const Expr& e)
        {
            auto n = copy(e);
            auto m = check(*e.args[0]);
            if (!m->type.is_matrix())
                fail(ErrorKind::Type, e.pos, "indexing a non-matrix expression of type " + describe(m->type));
            std::size_t count = e.args.size() - 1;
            if (static_cast<int>(count) != m->type.dims)
                fail(ErrorKind::Type, e.pos, "matrix has " + std::to_string(m->type.dims) + " dimensions but "
                        + std::to_string(count) + " indices were given");
            n->args = {m};
            int free = 0;
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                if (!e.args[i]) {
                    ++free;
                    n->args.push_back(nullptr);
                    continue;
                }
                auto ix = check(*e.args[i]);
                if (!ix->type.is_scalar())
                    fail(ErrorKind::Type, ix->pos, "matrix index must be an int or bool expression");
                if (e.kind == ExprKind::Slice)
                    non_decision(ix, "a slice index");
                else
                    non_decision(ix, "a matrix index (decision-variable indices are not supported)");
                n->args.push_back(ix);
            }
            if (e.kind == ExprKind::InBounds)
                n->type = Type::boolean();
            else if (e.kind == ExprKind::Slice)
                n->type = Type::matrix(free, m->type.base);
            else
                n->type = Type::atomic(m->type.base);
            n->decision = m->decision;
            return n;
        }

        std::int64_t constant_int(const ExprPtr& e, const char* what)
        {
            // Only literal arithmetic is foldable here; lettings are not yet bound.
            std::optional<std::int64_t> v;
            if (e->kind == ExprKind::IntLit)
                v = e->int_value;
            else if (e->kind == ExprKind::Unary && e->unary == UnaryOp::Neg && e->args[0]->kind == ExprKind::IntLit)
                v = -e->args[0]->int_value;
            if (!v)
                fail(ErrorKind::Type, e->pos, std::string(what) + " must be an integer literal");
            return *v;
        }

        void arity(const Expr& e, std::size_t lo, std::size_t hi)
        {
            if (e.args.size() < lo || e.args.size() > hi) {
                std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi);
                fail(ErrorKind::Type, e.pos, std::string(spelling(e.builtin)) + " takes " + want + " argument"
                        + (hi == 1 ? "" : "s") + ", found " + std::to_string(e.args.size()));
            }
        }

        ExprPtr call(const Expr& e)
        {
            auto n = copy(e);
            n->args.clear();
            for (const auto& a : e.args)
                n->args.push_back(check(*a));
            auto& args = n->args;
            std::string fname = spelling(e.builtin);
            switch (e.builtin) {
            case Builtin::AllDiff:
                arity(e, 1, 1);
                one_dim(args[0], "argument of allDiff");
                n->type = Type::boolean();
                break;
            case Builtin::AllDiffExcept:
                arity(e, 2, 2);
                one_dim(args[0], "first argument of alldifferent_except");
                args[1] = as_int(args[1], "second argument of alldifferent_except");
                non_decision(args[1], "the excepted value of alldifferent_except");
                n->type = Type::boolean();
                break;
            case Builtin::Gcc:
                arity(e, 3, 3);
                for (auto& a : args)
                    one_dim(a, "argument of gcc");
                non_decision(args[1], "the values of gcc");
                n->type = Type::boolean();
                break;
            case Builtin::AtLeast:
            case Builtin::AtMost:
                arity(e, 3, 3);
                for (auto& a : args)
                    one_dim(a, "argument of " + fname);
                non_decision(args[1], "the counts of " + fname);
                non_decision(args[2], "the values of " + fname);
                n->type = Type::boolean();
                break;
            case Builtin::Table:
                arity(e, 2, 2);
                one_dim(args[0], "first argument of table");
                if (!args[1]->type.is_matrix() || args[1]->type.dims != 2)
                    fail(ErrorKind::Type, args[1]->pos, "second argument of table must be a two-dimensional matrix");
                non_decision(args[1], "the tuples of table");
                n->type = Type::boolean();
                break;
            case Builtin::Min:
            case Builtin::Max:
                arity(e, 1, 2);
                if (args.size() == 2) {
                    args[0] = as_int(args[0], ("argument of " + fname).c_str());
                    args[1] = as_int(args[1], ("argument of " + fname).c_str());
                }
                else
                    one_dim(args[0], "argument of " + fname);
                n->type = Type::integer();
                break;
            case Builtin::Sum:
            case Builtin::Product:
                arity(e, 1, 1);
                one_dim(args[0], "argument of " + fname);
                n->type = Type::integer();
                break;
            case Builtin::And:
            case Builtin::Or:
                arity(e, 1, 1);
                one_dim(args[0], "argument of " + fname);
                if (args[0]->type.base != BaseType::Bool)
                    fail(ErrorKind::Type, args[0]->pos, "argument of " + fname + " must be a matrix of booleans");
                n->type = Type::boolean();
                break;
            case Builtin::Flatten: {
                arity(e, 1, 2);
                const ExprPtr& m = args.back();
                if (!m->type.is_matrix())
                    fail(ErrorKind::Type, m->pos, "argument of flatten must be a matrix");
                if (args.size() == 1)
                    n->type = Type::matrix(1, m->type.base);
                else {
                    std::int64_t depth = constant_int(args[0], "the depth argument of flatten");
                    if (depth < 0)
                        fail(ErrorKind::Type, args[0]->pos, "flatten depth must be 0 or positive");
                    if (depth + 1 > m->type.dims)
                        fail(ErrorKind::Type, e.pos, "flatten(" + std::to_string(depth) + ", X) needs at least "
                                + std::to_string(depth + 1) + " dimensions but X has " + std::to_string(m->type.dims));
                    n->type = Type::matrix(m->type.dims - static_cast<int>(depth), m->type.base);
                }
                break;
            }
            case Builtin::ToSet:
                arity(e, 1, 1);
                one_dim(args[0], "argument of toSet");
                non_decision(args[0], "the argument of toSet");
                n->type = Type::set();
                break;
            case Builtin::ToInt: {
                arity(e, 1, 1);
                auto a = as_bool(args[0], "argument of toInt");
                return coerce_bool_to_int(a);
            }
            case Builtin::Factorial:
            case Builtin::Popcount:
                arity(e, 1, 1);
                args[0] = as_int(args[0], ("argument of " + fname).c_str());
                non_decision(args[0], "the argument of " + fname);
                n->type = Type::integer();
                break;
            }
            n->decision = std::any_of(args.begin(), args.end(), [](const ExprPtr& a) { return a->decision; });
            return n;
        }
    };

    bool syntactically_open(const DomainAst& d, const TypeEnv& env)
    {
        switch (d.kind) {
        case DomainKind::Int:
            if (d.unbounded)
                return true;
            for (const auto& r : d.ranges)
                if (r.is_range && (!r.lo || !r.hi))
                    return true;
            return false;
        case DomainKind::Matrix: return syntactically_open(*d.base, env);
        default: return false;
        }
    }

    bool assignable(const Type& value, const Type& declared)
    {
        if (value == declared)
            return true;
        if (declared.is_int() && value.is_bool())
            return true;
        return declared.is_matrix() && value.is_matrix() && value.dims == declared.dims
            && (declared.base == BaseType::Int || value.base == BaseType::Bool);
    }
}

ExprPtr check_expression(const Expr& e, TypeEnv& env)
{
    return Checker(env).check(e);
}

DomainPtr check_domain(const DomainAst& d, TypeEnv& env, Type* value_type)
{
    return Checker(env).domain(d, value_type);
}

TypedModel check_model(const SourceModel& m)
{
    TypedModel out;
    TypeEnv& env = out.env;
    Checker checker(env);
    for (const auto& s : m.statements) {
        switch (s.kind) {
        case StmtKind::Header: break;
        case StmtKind::Given:
        case StmtKind::Find: {
            Type t;
            DomainPtr d = checker.domain(*s.domain, &t);
            if (s.kind == StmtKind::Find && syntactically_open(*s.domain, env))
                fail(ErrorKind::Type, s.domain->pos, "the domain of a find must be finite");
            for (const auto& name : s.names) {
                env.declare(Symbol{name, s.kind == StmtKind::Find ? Category::Decision : Category::Parameter, t, false, s.pos});
                out.decls.push_back(Declaration{s.kind, name, s.pos, d, nullptr, t});
            }
            break;
        }
        case StmtKind::Letting: {
            ExprPtr v = checker.check(*s.expr);
            if (v->decision)
                fail(ErrorKind::Type, s.expr->pos, "the value of letting '" + s.names.front() + "' may not contain decision variables");
            if (v->type.kind == Type::Kind::Set)
                fail(ErrorKind::Type, s.expr->pos, "a letting cannot hold a set");
            Type t = v->type;
            DomainPtr d;
            if (s.domain) {
                Type dt;
                d = checker.domain(*s.domain, &dt);
                if (!assignable(v->type, dt))
                    fail(ErrorKind::Type, s.expr->pos, "letting '" + s.names.front() + "' declared as " + to_string(dt)
                            + " but its value is " + to_string(v->type));
                if (dt.is_int())
                    v = coerce_bool_to_int(v);
                t = dt;
            }
            env.declare(Symbol{s.names.front(), Category::Constant, t, false, s.pos});
            out.decls.push_back(Declaration{s.kind, s.names.front(), s.pos, d, v, t});
            break;
        }
        case StmtKind::LettingDomain: {
            Type t;
            DomainPtr d = checker.domain(*s.domain, &t);
            env.declare(Symbol{s.names.front(), Category::Constant, t, true, s.pos});
            out.decls.push_back(Declaration{s.kind, s.names.front(), s.pos, d, nullptr, t});
            break;
        }
        case StmtKind::Where:
            for (const auto& w : s.exprs) {
                ExprPtr tw = checker.check(*w);
                if (!tw->type.is_bool())
                    fail(ErrorKind::Type, w->pos, "a where condition must be boolean");
                if (tw->decision)
                    fail(ErrorKind::Type, w->pos, "a where condition may not contain decision variables");
                out.wheres.push_back(tw);
            }
            break;
        case StmtKind::Objective: {
            ExprPtr o = checker.check(*s.expr);
            if (!o->type.is_scalar())
                fail(ErrorKind::Type, s.expr->pos, "the objective must be an integer or boolean expression");
            out.objective = Objective{coerce_bool_to_int(o), s.maximising, s.pos};
            break;
        }
        case StmtKind::BranchingOn:
            for (const auto& b : s.exprs) {
                ExprPtr tb = checker.check(*b);
                if (!tb->type.is_scalar() && !tb->type.is_matrix())
                    fail(ErrorKind::Type, b->pos, "branching on entries must be decision variables or matrices of them");
                out.branching.push_back(tb);
            }
            break;
        case StmtKind::Heuristic:
            out.heuristic = s.text;
            out.heuristic_pos = s.pos;
            break;
        case StmtKind::SuchThat:
            for (const auto& c : s.exprs) {
                ExprPtr tc = checker.check(*c);
                if (!tc->type.is_bool())
                    fail(ErrorKind::Type, c->pos, "a constraint must be a boolean expression, found " + to_string(tc->type));
                out.constraints.push_back(tc);
            }
            break;
        }
    }
    return out;
}

Interval infer_bounds(const Expr& e, const std::unordered_map<std::string, Interval>& bounds)
{
    if (e.type.is_bool())
        return Interval::boolean();
    auto sub = [&](std::size_t i) { return infer_bounds(*e.args[i], bounds); };
    switch (e.kind) {
    case ExprKind::IntLit: return Interval::point(e.int_value);
    case ExprKind::Ident: {
        auto it = bounds.find(e.name);
        return it == bounds.end() ? Interval::full() : it->second;
    }
    case ExprKind::Unary:
        switch (e.unary) {
        case UnaryOp::Neg: return interval::neg(sub(0));
        case UnaryOp::Abs: return interval::abs(sub(0));
        case UnaryOp::ToInt: return Interval::boolean();
        case UnaryOp::Not: return Interval::boolean();
        }
        break;
    case ExprKind::Binary:
        switch (e.binary) {
        case BinaryOp::Add: return interval::add(sub(0), sub(1));
        case BinaryOp::Sub: return interval::sub(sub(0), sub(1));
        case BinaryOp::Mul: return interval::mul(sub(0), sub(1));
        case BinaryOp::Div: return interval::div(sub(0), sub(1));
        case BinaryOp::Mod: return interval::mod(sub(0), sub(1));
        case BinaryOp::Pow: return interval::pow(sub(0), sub(1));
        default: break;
        }
        break;
    case ExprKind::Call:
        if ((e.builtin == Builtin::Min || e.builtin == Builtin::Max) && e.args.size() == 2)
            return e.builtin == Builtin::Min ? interval::min(sub(0), sub(1)) : interval::max(sub(0), sub(1));
        if (e.builtin == Builtin::Factorial) {
            std::int64_t hi = std::clamp<std::int64_t>(sub(0).hi, 0, 20);
            return {0, arith::factorial(hi)};
        }
        if (e.builtin == Builtin::Popcount)
            return {0, 64};
        if ((e.builtin == Builtin::Sum || e.builtin == Builtin::Min || e.builtin == Builtin::Max)
            && e.args[0]->kind == ExprKind::MatrixLit) {
            const auto& elems = e.args[0]->args;
            if (elems.empty())
                return Interval::point(0);
            Interval acc = infer_bounds(*elems[0], bounds);
            for (std::size_t i = 1; i < elems.size(); ++i) {
                Interval x = infer_bounds(*elems[i], bounds);
                acc = e.builtin == Builtin::Sum ? interval::add(acc, x)
                    : e.builtin == Builtin::Min ? interval::min(acc, x)
                                                : interval::max(acc, x);
            }
            return acc;
        }
        break;
    default: break;
    }
    return Interval::full();
}

} // namespace eprime
