#include "eprime/instance.hpp"

#include "eprime/printer.hpp"

#include <set>
#include <unordered_map>

namespace eprime {

namespace {
    Type type_of_value(const Value& v)
    {
        if (v.is_bool())
            return Type::boolean();
        if (v.is_int())
            return Type::integer();
        const auto& m = v.as_matrix();
        bool any_int = false;
        for (const auto& x : m.elems)
            any_int |= x.is_int();
        return Type::matrix(static_cast<int>(m.dims()), any_int || m.elems.empty() ? BaseType::Int : BaseType::Bool);
    }

    /// Why `v` is not in `d`, or empty when it is.
    std::string membership_problem(const Domain& d, const Value& v)
    {
        if (!d.is_matrix()) {
            if (v.is_matrix())
                return "a matrix is not in " + d.str();
            if (d.is_bool())
                return v.is_bool() ? "" : v.str() + " is not a boolean";
            return d.ints().contains(v.to_int()) ? "" : v.str() + " is not in " + d.str();
        }
        if (!v.is_matrix())
            return v.str() + " is not a matrix";
        const auto& m = v.as_matrix();
        if (m.dims() != d.index().size())
            return "matrix has " + std::to_string(m.dims()) + " dimensions but the domain has " + std::to_string(d.index().size());
        for (std::size_t i = 0; i < m.dims(); ++i)
            if (!(m.index[i] == d.index()[i]))
                return "dimension " + std::to_string(i + 1) + " is indexed by " + m.index[i].str() + " but the domain requires "
                    + d.index()[i].str();
        for (const auto& x : m.elems) {
            auto p = membership_problem(d.base(), x);
            if (!p.empty())
                return p;
        }
        return "";
    }

    /// A letting with a declared matrix domain takes on its index domains.
    Value reindex_to(const Domain& d, const Value& v, Pos pos)
    {
        if (!d.is_matrix() || !v.is_matrix())
            return v;
        const auto& m = v.as_matrix();
        if (m.dims() != d.index().size())
            fail(ErrorKind::Instance, pos, "matrix has " + std::to_string(m.dims()) + " dimensions but the declared domain has "
                    + std::to_string(d.index().size()));
        try {
            return Value::matrix(m.reindexed(d.index()));
        }
        catch (const Error& err) {
            fail(ErrorKind::Instance, pos, err.detail());
        }
    }

    Domain must_domain(const DomainAst& d, Env& env, Pos pos, const std::string& what)
    {
        auto r = eval_domain(d, env);
        if (!r)
            fail(ErrorKind::Instance, pos, "the domain of " + what + " is undefined");
        return *r;
    }
}

Instance bind_declarations(const TypedModel& model, const SourceModel* params, std::uint64_t enum_cap)
{
    Instance inst;
    inst.enum_cap = enum_cap;

    // Parameter-file bindings, typed in their own scope; later bindings may
    // refer to earlier ones.
    std::unordered_map<std::string, Value> bound;
    std::unordered_map<std::string, Pos> bound_pos;
    if (params) {
        TypeEnv penv;
        Instance pinst;
        for (const auto& s : params->statements) {
            if (s.kind != StmtKind::Letting)
                continue;
            const std::string& name = s.names.front();
            const Declaration* decl = model.declaration(name);
            if (!decl || decl->kind != StmtKind::Given)
                fail(ErrorKind::Instance, s.pos, "parameter file binds '" + name + "' which is not a given of the model");
            if (bound.count(name))
                fail(ErrorKind::Instance, s.pos, "parameter '" + name + "' is bound twice");
            ExprPtr e = check_expression(*s.expr, penv);
            Env env(pinst);
            auto v = eval_ground(*e, env);
            if (!v)
                fail(ErrorKind::Instance, s.pos, "the value of parameter '" + name + "' is undefined");
            if (v->is_set())
                fail(ErrorKind::Instance, s.pos, "parameter '" + name + "' cannot be a set");
            penv.declare(Symbol{name, Category::Constant, type_of_value(*v), false, s.pos});
            pinst.values[name] = *v;
            bound[name] = *v;
            bound_pos[name] = s.pos;
        }
    }

    for (const auto& d : model.decls) {
        Env env(inst);
        switch (d.kind) {
        case StmtKind::Given: {
            auto it = bound.find(d.name);
            if (it == bound.end())
                fail(ErrorKind::Instance, d.pos, "no value given for parameter '" + d.name + "'");
            Domain dom = must_domain(*d.domain, env, d.pos, "parameter '" + d.name + "'");
            Value v = coerce_value(it->second, d.type.is_matrix() ? d.type.base : d.type.is_bool() ? BaseType::Bool : BaseType::Int);
            auto problem = membership_problem(dom, v);
            if (!problem.empty())
                fail(ErrorKind::Instance, bound_pos[d.name], "value of parameter '" + d.name + "' is outside its domain: " + problem);
            inst.values[d.name] = std::move(v);
            break;
        }
        case StmtKind::Letting: {
            auto v = eval_ground(*d.value, env);
            if (!v)
                fail(ErrorKind::Instance, d.pos, "the value of letting '" + d.name + "' is undefined");
            Value val = *v;
            if (d.domain) {
                Domain dom = must_domain(*d.domain, env, d.pos, "letting '" + d.name + "'");
                val = reindex_to(dom, coerce_value(val, d.type.is_matrix() ? d.type.base : BaseType::Int), d.pos);
                if (dom.is_bool() || dom.is_int())
                    val = coerce_value(val, dom.is_bool() ? BaseType::Bool : BaseType::Int);
                auto problem = membership_problem(dom, val);
                if (!problem.empty())
                    fail(ErrorKind::Instance, d.pos, "value of letting '" + d.name + "' is outside its domain: " + problem);
            }
            inst.values[d.name] = std::move(val);
            break;
        }
        case StmtKind::LettingDomain:
            inst.domains[d.name] = must_domain(*d.domain, env, d.pos, "'" + d.name + "'");
            break;
        case StmtKind::Find: {
            Domain dom = must_domain(*d.domain, env, d.pos, "decision variable '" + d.name + "'");
            if (!dom.finite())
                fail(ErrorKind::Instance, d.pos, "the domain " + dom.str() + " of '" + d.name + "' is not finite");
            inst.find_domains[d.name] = std::move(dom);
            break;
        }
        default: break;
        }
    }
    return inst;
}

std::optional<WhereViolation> check_where(const TypedModel& model, const Instance& inst)
{
    for (const auto& w : model.wheres) {
        Env env(inst);
        if (!eval_bool(*w, env))
            return WhereViolation{w->pos, to_string(*w)};
    }
    return std::nullopt;
}

Instance bind_parameters(const TypedModel& model, const SourceModel* params, std::uint64_t enum_cap)
{
    Instance inst = bind_declarations(model, params, enum_cap);
    if (auto v = check_where(model, inst))
        fail(ErrorKind::Where, v->pos, "where clause " + v->text + " is not satisfied");
    return inst;
}

const Domain& resolve_letting_domain(const std::string& name, const Instance& inst)
{
    auto it = inst.domains.find(name);
    if (it == inst.domains.end())
        fail(ErrorKind::Instance, {}, "'" + name + "' is not a letting domain");
    return it->second;
}

} // namespace eprime
