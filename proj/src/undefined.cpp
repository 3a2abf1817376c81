#include "eprime/undefined.hpp"

#include <algorithm>

namespace eprime {

namespace {
    std::shared_ptr<Expr> typed(ExprKind kind, Type t, Pos pos)
    {
        auto n = std::make_shared<Expr>();
        n->kind = kind;
        n->type = t;
        n->pos = pos;
        return n;
    }

    ExprPtr bin(BinaryOp op, ExprPtr a, ExprPtr b, Type t)
    {
        auto n = typed(ExprKind::Binary, t, a->pos);
        n->binary = op;
        n->decision = a->decision || b->decision;
        n->args = {std::move(a), std::move(b)};
        return n;
    }

    ExprPtr lit(std::int64_t v, Pos pos)
    {
        auto n = typed(ExprKind::IntLit, Type::integer(), pos);
        n->int_value = v;
        return n;
    }

    ExprPtr conj(std::vector<ExprPtr> parts)
    {
        ExprPtr acc = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i)
            acc = bin(BinaryOp::And, acc, parts[i], Type::boolean());
        return acc;
    }

    class Guarder {
    public:
        /// Rewrites e; conditions that still need a boolean home go to `out`.
        ExprPtr rewrite(const ExprPtr& e, std::vector<ExprPtr>& out)
        {
            std::vector<ExprPtr> mine;
            ExprPtr r = rewrite_node(e, mine);
            if (e->type.is_bool()) {
                if (mine.empty())
                    return r;
                mine.insert(mine.begin(), r);
                return conj(std::move(mine));
            }
            out.insert(out.end(), mine.begin(), mine.end());
            return r;
        }

    private:
        ExprPtr rewrite_node(const ExprPtr& e, std::vector<ExprPtr>& g)
        {
            switch (e->kind) {
            case ExprKind::IntLit:
            case ExprKind::BoolLit:
            case ExprKind::Ident:
            case ExprKind::SetDomain: return e;
            case ExprKind::MatrixLit:
            case ExprKind::Unary: {
                auto n = std::make_shared<Expr>(*e);
                for (auto& a : n->args)
                    a = rewrite(a, g);
                return n;
            }
            case ExprKind::Binary: {
                auto n = std::make_shared<Expr>(*e);
                for (auto& a : n->args)
                    a = rewrite(a, g);
                const ExprPtr& a = n->args[0];
                const ExprPtr& b = n->args[1];
                if (e->binary == BinaryOp::Div || e->binary == BinaryOp::Mod) {
                    n->total = true;
                    g.push_back(bin(BinaryOp::Ne, b, lit(0, e->pos), Type::boolean()));
                }
                else if (e->binary == BinaryOp::Pow) {
                    n->total = true;
                    auto nz = bin(BinaryOp::Or, bin(BinaryOp::Ne, a, lit(0, e->pos), Type::boolean()),
                        bin(BinaryOp::Ne, b, lit(0, e->pos), Type::boolean()), Type::boolean());
                    g.push_back(bin(BinaryOp::And, nz, bin(BinaryOp::Ge, b, lit(0, e->pos), Type::boolean()), Type::boolean()));
                }
                return n;
            }
            case ExprKind::Index:
            case ExprKind::Slice: {
                auto n = std::make_shared<Expr>(*e);
                for (auto& a : n->args)
                    if (a)
                        a = rewrite(a, g);
                n->total = true;
                auto check = std::make_shared<Expr>(*n);
                check->kind = ExprKind::InBounds;
                check->type = Type::boolean();
                check->total = false;
                g.push_back(check);
                return n;
            }
            case ExprKind::InBounds: return e;
            case ExprKind::Call: {
                auto n = std::make_shared<Expr>(*e);
                for (auto& a : n->args)
                    a = rewrite(a, g);
                if (e->builtin == Builtin::Factorial) {
                    n->total = true;
                    const ExprPtr& a = n->args[0];
                    g.push_back(bin(BinaryOp::And, bin(BinaryOp::Ge, a, lit(0, e->pos), Type::boolean()),
                        bin(BinaryOp::Le, a, lit(20, e->pos), Type::boolean()), Type::boolean()));
                }
                return n;
            }
            case ExprKind::Quantifier: {
                auto n = std::make_shared<Expr>(*e);
                std::vector<ExprPtr> inner;
                n->args[0] = rewrite(e->args[0], inner);
                if (!inner.empty())
                    g.push_back(forall(e->vars, e->domain, conj(std::move(inner)), e->pos));
                return n;
            }
            case ExprKind::Comprehension: {
                auto n = std::make_shared<Expr>(*e);
                std::vector<ExprPtr> inner;
                for (auto& c : n->conditions) {
                    std::vector<ExprPtr> none;
                    c = rewrite(c, none);
                }
                n->args[0] = rewrite(e->args[0], inner);
                if (!inner.empty()) {
                    ExprPtr body = conj(std::move(inner));
                    if (!n->conditions.empty())
                        body = bin(BinaryOp::Imp, conj(n->conditions), body, Type::boolean());
                    for (auto it = e->generators.rbegin(); it != e->generators.rend(); ++it)
                        body = forall(it->vars, it->domain, body, e->pos);
                    g.push_back(body);
                }
                return n;
            }
            }
            return e;
        }

        static ExprPtr forall(const std::vector<std::string>& vars, const DomainPtr& dom, ExprPtr body, Pos pos)
        {
            auto q = typed(ExprKind::Quantifier, Type::boolean(), pos);
            q->quant = QuantKind::ForAll;
            q->vars = vars;
            q->domain = dom;
            q->decision = body->decision;
            q->args = {std::move(body)};
            return q;
        }
    };
}

GuardResult guard_undefinedness(const ExprPtr& e)
{
    GuardResult r;
    r.expr = Guarder().rewrite(e, r.pending);
    return r;
}

} // namespace eprime
