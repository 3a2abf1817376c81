#include "eprime/parser.hpp"

#include <optional>
#include <unordered_map>

namespace eprime {

namespace {
    const std::unordered_map<std::string_view, Builtin>& builtin_names()
    {
        static const std::unordered_map<std::string_view, Builtin> names = {
            {"allDiff", Builtin::AllDiff},
            {"alldifferent_except", Builtin::AllDiffExcept},
            {"gcc", Builtin::Gcc},
            {"atleast", Builtin::AtLeast},
            {"atmost", Builtin::AtMost},
            {"table", Builtin::Table},
            {"min", Builtin::Min},
            {"max", Builtin::Max},
            {"product", Builtin::Product},
            {"and", Builtin::And},
            {"or", Builtin::Or},
            {"flatten", Builtin::Flatten},
            {"toSet", Builtin::ToSet},
            {"toInt", Builtin::ToInt},
            {"factorial", Builtin::Factorial},
            {"popcount", Builtin::Popcount},
        };
        return names;
    }

    struct BinaryInfo {
        BinaryOp op;
        int prec;
        bool right;
    };

    std::optional<BinaryInfo> binary_info(const Token& t)
    {
        static const std::unordered_map<std::string_view, BinaryOp> ops = {
            {"+", BinaryOp::Add}, {"-", BinaryOp::Sub}, {"*", BinaryOp::Mul}, {"/", BinaryOp::Div},
            {"%", BinaryOp::Mod}, {"**", BinaryOp::Pow}, {"/\\", BinaryOp::And}, {"\\/", BinaryOp::Or},
            {"->", BinaryOp::Imp}, {"<->", BinaryOp::Iff}, {"=", BinaryOp::Eq}, {"!=", BinaryOp::Ne},
            {"<", BinaryOp::Lt}, {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge},
            {"<lex", BinaryOp::LexLt}, {"<=lex", BinaryOp::LexLe}, {">lex", BinaryOp::LexGt},
            {">=lex", BinaryOp::LexGe}};
        BinaryOp op;
        if (t.kind == TokenKind::Operator) {
            auto it = ops.find(t.text);
            if (it == ops.end())
                return std::nullopt;
            op = it->second;
        }
        else if (t.is_keyword("in"))
            op = BinaryOp::In;
        else if (t.is_punct(","))
            op = BinaryOp::Comma;
        else
            return std::nullopt;
        return BinaryInfo{op, precedence(op), op == BinaryOp::Pow};
    }

    constexpr int quantifier_body_prec = -10;
    constexpr int comma_prec = -20;
    constexpr int unary_minus_prec = 15;

    class Parser {
    public:
        explicit Parser(std::span<const Token> tokens) : tokens_(tokens)
        {
            end_.kind = TokenKind::End;
            end_.text = "end of input";
            if (!tokens.empty())
                end_.pos = tokens.back().pos;
        }

        SourceModel model(bool param_file)
        {
            SourceModel m;
            m.statements.push_back(header());
            bool seen_objective = false;
            bool seen_such_that = false;
            while (!at_end()) {
                const Token& t = peek();
                if (param_file) {
                    if (!t.is_keyword("letting"))
                        fail(ErrorKind::Syntax, t.pos, "parameter files may only contain letting statements, found '" + t.text + "'");
                    m.statements.push_back(letting());
                    continue;
                }
                if (t.is_keyword("given"))
                    m.statements.push_back(declaration(StmtKind::Given));
                else if (t.is_keyword("find"))
                    m.statements.push_back(declaration(StmtKind::Find));
                else if (t.is_keyword("letting"))
                    m.statements.push_back(letting());
                else if (t.is_keyword("where")) {
                    if (seen_objective || seen_such_that)
                        fail(ErrorKind::Syntax, t.pos, "where statements must precede the objective and the constraints");
                    m.statements.push_back(expression_list(StmtKind::Where));
                }
                else if (t.is_keyword("such")) {
                    seen_such_that = true;
                    next();
                    expect_keyword("that");
                    Statement s = expression_list(StmtKind::SuchThat, false);
                    s.pos = t.pos;
                    m.statements.push_back(std::move(s));
                }
                else if (t.is_ident("minimising") || t.is_ident("maximising")) {
                    if (seen_objective)
                        fail(ErrorKind::Syntax, t.pos, "only one objective is allowed");
                    seen_objective = true;
                    Statement s;
                    s.kind = StmtKind::Objective;
                    s.pos = t.pos;
                    s.maximising = t.text == "maximising";
                    next();
                    s.expr = expr(quantifier_body_prec);
                    m.statements.push_back(std::move(s));
                }
                else if (t.is_ident("branching")) {
                    Statement s;
                    s.kind = StmtKind::BranchingOn;
                    s.pos = t.pos;
                    next();
                    expect_ident("on");
                    ExprPtr list = primary();
                    if (list->kind == ExprKind::MatrixLit && !list->index_domain)
                        s.exprs = list->args;
                    else
                        s.exprs.push_back(list);
                    m.statements.push_back(std::move(s));
                }
                else if (t.is_ident("heuristic")) {
                    Statement s;
                    s.kind = StmtKind::Heuristic;
                    s.pos = t.pos;
                    next();
                    const Token& h = next();
                    if (h.kind != TokenKind::Identifier
                        || (h.text != "static" && h.text != "sdf" && h.text != "conflict" && h.text != "srf"))
                        fail(ErrorKind::Syntax, h.pos, "unknown heuristic '" + h.text + "'");
                    s.text = h.text;
                    m.statements.push_back(std::move(s));
                }
                else if (t.is_keyword("language"))
                    fail(ErrorKind::Syntax, t.pos, "duplicate language header");
                else
                    fail(ErrorKind::Syntax, t.pos, "unexpected '" + t.text + "' at start of statement");
            }
            return m;
        }

        ExprPtr whole_expression()
        {
            ExprPtr e = expr(comma_prec);
            if (!at_end())
                fail(ErrorKind::Syntax, peek().pos, "unexpected '" + peek().text + "' after expression");
            return e;
        }

        DomainPtr whole_domain()
        {
            DomainPtr d = domain();
            if (!at_end())
                fail(ErrorKind::Syntax, peek().pos, "unexpected '" + peek().text + "' after domain");
            return d;
        }

    private:
        std::span<const Token> tokens_;
        std::size_t at_ = 0;
        Token end_;

        [[nodiscard]] bool at_end() const { return at_ >= tokens_.size(); }
        [[nodiscard]] const Token& peek(std::size_t ahead = 0) const
        {
            return at_ + ahead < tokens_.size() ? tokens_[at_ + ahead] : end_;
        }
        const Token& next()
        {
            const Token& t = peek();
            if (!at_end())
                ++at_;
            return t;
        }
        bool accept_punct(std::string_view p)
        {
            if (peek().is_punct(p)) {
                ++at_;
                return true;
            }
            return false;
        }
        void expect_punct(std::string_view p)
        {
            if (!accept_punct(p))
                fail(ErrorKind::Syntax, peek().pos, "expected '" + std::string(p) + "' but found '" + peek().text + "'");
        }
        void expect_op(std::string_view p)
        {
            if (!peek().is_op(p))
                fail(ErrorKind::Syntax, peek().pos, "expected '" + std::string(p) + "' but found '" + peek().text + "'");
            ++at_;
        }
        void expect_keyword(std::string_view k)
        {
            if (!peek().is_keyword(k))
                fail(ErrorKind::Syntax, peek().pos, "expected '" + std::string(k) + "' but found '" + peek().text + "'");
            ++at_;
        }
        void expect_ident(std::string_view k)
        {
            if (!peek().is_ident(k))
                fail(ErrorKind::Syntax, peek().pos, "expected '" + std::string(k) + "' but found '" + peek().text + "'");
            ++at_;
        }
        std::string identifier()
        {
            const Token& t = next();
            if (t.kind == TokenKind::Keyword)
                fail(ErrorKind::Syntax, t.pos, "reserved word '" + t.text + "' cannot be used as an identifier");
            if (t.kind != TokenKind::Identifier)
                fail(ErrorKind::Syntax, t.pos, "expected identifier but found '" + t.text + "'");
            return t.text;
        }

        Statement header()
        {
            const Token& t = peek();
            if (!t.is_keyword("language"))
                fail(ErrorKind::Syntax, t.pos, "missing header 'language ESSENCE' 1.0'");
            next();
            if (!peek().is_ident("ESSENCE'"))
                fail(ErrorKind::Syntax, peek().pos, "expected ESSENCE' after 'language'");
            next();
            Statement s;
            s.kind = StmtKind::Header;
            s.pos = t.pos;
            const Token& major = next();
            if (major.kind != TokenKind::Integer)
                fail(ErrorKind::Syntax, major.pos, "expected version number in header");
            s.text = major.text;
            if (accept_punct(".")) {
                const Token& minor = next();
                if (minor.kind != TokenKind::Integer)
                    fail(ErrorKind::Syntax, minor.pos, "malformed version number in header");
                s.text += "." + minor.text;
            }
            return s;
        }

        std::vector<std::string> name_list()
        {
            std::vector<std::string> names{identifier()};
            while (accept_punct(","))
                names.push_back(identifier());
            return names;
        }

        Statement declaration(StmtKind kind)
        {
            Statement s;
            s.kind = kind;
            s.pos = next().pos;
            s.names = name_list();
            expect_punct(":");
            s.domain = domain();
            return s;
        }

        Statement letting()
        {
            Statement s;
            s.pos = next().pos;
            s.names.push_back(identifier());
            if (peek().is_ident("be") && peek(1).is_ident("domain")) {
                next();
                next();
                s.kind = StmtKind::LettingDomain;
                s.domain = domain();
                return s;
            }
            s.kind = StmtKind::Letting;
            if (accept_punct(":"))
                s.domain = domain();
            if (!peek().is_op("="))
                fail(ErrorKind::Syntax, peek().pos, "expected '=' or 'be domain' in letting");
            next();
            s.expr = expr(quantifier_body_prec);
            return s;
        }

        Statement expression_list(StmtKind kind, bool consume_keyword = true)
        {
            Statement s;
            s.kind = kind;
            s.pos = peek().pos;
            if (consume_keyword)
                next();
            s.exprs.push_back(expr(quantifier_body_prec));
            while (accept_punct(","))
                s.exprs.push_back(expr(quantifier_body_prec));
            return s;
        }

        // ---- expressions -------------------------------------------------

        ExprPtr expr(int min_prec)
        {
            ExprPtr lhs = prefix();
            for (;;) {
                auto info = binary_info(peek());
                if (!info || info->prec < min_prec)
                    break;
                Pos pos = next().pos;
                ExprPtr rhs;
                if (info->op == BinaryOp::In)
                    rhs = set_operand();
                else
                    rhs = expr(info->right ? info->prec : info->prec + 1);
                lhs = ast::binary(info->op, std::move(lhs), std::move(rhs), pos);
            }
            return lhs;
        }

        ExprPtr prefix()
        {
            const Token& t = peek();
            if (t.is_op("-")) {
                next();
                return ast::unary(UnaryOp::Neg, expr(unary_minus_prec + 1), t.pos);
            }
            if (t.is_op("!")) {
                next();
                return ast::unary(UnaryOp::Not, prefix(), t.pos);
            }
            return postfix(primary());
        }

        ExprPtr postfix(ExprPtr e)
        {
            while (peek().is_punct("[")) {
                Pos pos = next().pos;
                std::vector<ExprPtr> entries;
                bool slice = false;
                do {
                    if (accept_punct("..")) {
                        entries.push_back(nullptr);
                        slice = true;
                    }
                    else
                        entries.push_back(expr(quantifier_body_prec));
                } while (accept_punct(","));
                expect_punct("]");
                auto node = std::make_shared<Expr>();
                node->kind = slice ? ExprKind::Slice : ExprKind::Index;
                node->pos = pos;
                node->args.push_back(std::move(e));
                for (auto& x : entries)
                    node->args.push_back(std::move(x));
                e = std::move(node);
            }
            return e;
        }

        ExprPtr primary()
        {
            const Token& t = peek();
            switch (t.kind) {
            case TokenKind::Integer:
                next();
                return ast::int_lit(t.value, t.pos);
            case TokenKind::Keyword:
                if (t.text == "true" || t.text == "false") {
                    next();
                    return ast::bool_lit(t.text == "true", t.pos);
                }
                if (t.text == "sum" && peek(1).is_punct("("))
                    return call(Builtin::Sum);
                if (t.text == "forAll" || t.text == "forall" || t.text == "exists" || t.text == "sum")
                    return quantifier();
                break;
            case TokenKind::Identifier: {
                if (peek(1).is_punct("(")) {
                    auto it = builtin_names().find(t.text);
                    if (it != builtin_names().end())
                        return call(it->second);
                    fail(ErrorKind::Syntax, t.pos, "unknown function '" + t.text + "'");
                }
                next();
                return ast::ident(t.text, t.pos);
            }
            case TokenKind::Punctuation:
                if (t.text == "(") {
                    next();
                    ExprPtr inner = expr(comma_prec);
                    expect_punct(")");
                    return inner;
                }
                if (t.text == "[")
                    return bracket();
                break;
            case TokenKind::Operator:
                if (t.text == "|") {
                    next();
                    ExprPtr inner = expr(quantifier_body_prec);
                    expect_op("|");
                    return ast::unary(UnaryOp::Abs, std::move(inner), t.pos);
                }
                break;
            case TokenKind::End: break;
            }
            fail(ErrorKind::Syntax, t.pos, "unexpected '" + t.text + "' in expression");
        }

        ExprPtr call(Builtin fn)
        {
            Pos pos = next().pos;
            expect_punct("(");
            std::vector<ExprPtr> args;
            if (!peek().is_punct(")")) {
                args.push_back(expr(quantifier_body_prec));
                while (accept_punct(","))
                    args.push_back(expr(quantifier_body_prec));
            }
            expect_punct(")");
            return ast::call(fn, std::move(args), pos);
        }

        ExprPtr quantifier()
        {
            const Token& t = next();
            auto q = std::make_shared<Expr>();
            q->kind = ExprKind::Quantifier;
            q->pos = t.pos;
            q->quant = t.text == "exists" ? QuantKind::Exists : t.text == "sum" ? QuantKind::Sum : QuantKind::ForAll;
            q->vars = name_list();
            expect_punct(":");
            q->domain = domain();
            expect_punct(".");
            q->args.push_back(expr(quantifier_body_prec));
            return q;
        }

        [[nodiscard]] bool generator_ahead() const
        {
            std::size_t i = 0;
            for (;;) {
                if (peek(i).kind != TokenKind::Identifier)
                    return false;
                if (peek(i + 1).is_punct(":"))
                    return true;
                if (!peek(i + 1).is_punct(","))
                    return false;
                i += 2;
            }
        }

        ExprPtr bracket()
        {
            Pos pos = next().pos;
            auto m = std::make_shared<Expr>();
            m->kind = ExprKind::MatrixLit;
            m->pos = pos;
            if (accept_punct("]"))
                return m;
            if (peek().is_punct(";")) {
                next();
                m->index_domain = domain();
                expect_punct("]");
                return m;
            }
            ExprPtr first = expr(quantifier_body_prec);
            if (peek().is_op("|")) {
                next();
                m->kind = ExprKind::Comprehension;
                m->args.push_back(std::move(first));
                do {
                    if (generator_ahead()) {
                        Generator g;
                        g.pos = peek().pos;
                        g.vars = name_list();
                        expect_punct(":");
                        g.domain = domain();
                        m->generators.push_back(std::move(g));
                    }
                    else
                        m->conditions.push_back(expr(quantifier_body_prec));
                } while (accept_punct(","));
                if (m->generators.empty())
                    fail(ErrorKind::Syntax, pos, "matrix comprehension needs at least one generator");
            }
            else {
                m->args.push_back(std::move(first));
                while (accept_punct(","))
                    m->args.push_back(expr(quantifier_body_prec));
            }
            if (accept_punct(";"))
                m->index_domain = domain();
            expect_punct("]");
            return m;
        }

        ExprPtr set_operand()
        {
            if (peek().is_ident("toSet"))
                return postfix(primary());
            auto e = std::make_shared<Expr>();
            e->kind = ExprKind::SetDomain;
            e->pos = peek().pos;
            e->domain = domain_expr(1);
            return e;
        }

        // ---- domains -----------------------------------------------------

        DomainPtr domain() { return domain_expr(1); }

        std::optional<DomainOp> domain_op(const Token& t, int& prec) const
        {
            if (t.is_keyword("intersect")) {
                prec = 2;
                return DomainOp::Intersect;
            }
            if (t.is_keyword("union")) {
                prec = 1;
                return DomainOp::Union;
            }
            if (t.is_op("-")) {
                prec = 1;
                return DomainOp::Minus;
            }
            return std::nullopt;
        }

        DomainPtr domain_expr(int min_prec)
        {
            DomainPtr lhs = domain_primary();
            for (;;) {
                int prec = 0;
                auto op = domain_op(peek(), prec);
                if (!op || prec < min_prec)
                    break;
                Pos pos = next().pos;
                DomainPtr rhs = domain_expr(prec + 1);
                auto d = std::make_shared<DomainAst>();
                d->kind = DomainKind::Binary;
                d->pos = pos;
                d->op = *op;
                d->lhs = std::move(lhs);
                d->rhs = std::move(rhs);
                lhs = std::move(d);
            }
            return lhs;
        }

        DomainPtr domain_primary()
        {
            const Token& t = peek();
            auto d = std::make_shared<DomainAst>();
            d->pos = t.pos;
            if (t.is_keyword("bool")) {
                next();
                d->kind = DomainKind::Bool;
                return d;
            }
            if (t.is_keyword("int")) {
                next();
                d->kind = DomainKind::Int;
                if (!accept_punct("(")) {
                    d->unbounded = true;
                    return d;
                }
                do
                    d->ranges.push_back(range());
                while (accept_punct(","));
                expect_punct(")");
                return d;
            }
            if (t.is_ident("matrix") && peek(1).is_ident("indexed")) {
                next();
                next();
                expect_ident("by");
                d->kind = DomainKind::Matrix;
                expect_punct("[");
                do
                    d->index.push_back(domain());
                while (accept_punct(","));
                expect_punct("]");
                expect_ident("of");
                d->base = domain();
                return d;
            }
            if (t.is_punct("(")) {
                next();
                DomainPtr inner = domain();
                expect_punct(")");
                return inner;
            }
            if (t.kind == TokenKind::Identifier) {
                next();
                d->kind = DomainKind::Named;
                d->name = t.text;
                return d;
            }
            fail(ErrorKind::Syntax, t.pos, "expected a domain but found '" + t.text + "'");
        }

        RangeAst range()
        {
            RangeAst r;
            if (accept_punct("..")) {
                r.is_range = true;
                r.hi = expr(quantifier_body_prec);
                return r;
            }
            r.lo = expr(quantifier_body_prec);
            if (accept_punct("..")) {
                r.is_range = true;
                if (!peek().is_punct(",") && !peek().is_punct(")"))
                    r.hi = expr(quantifier_body_prec);
            }
            return r;
        }
    };
}

SourceModel parse_model(std::span<const Token> tokens)
{
    return Parser(tokens).model(false);
}

SourceModel parse_param_file(std::span<const Token> tokens)
{
    return Parser(tokens).model(true);
}

ExprPtr parse_expression(std::span<const Token> tokens)
{
    return Parser(tokens).whole_expression();
}

DomainPtr parse_domain(std::span<const Token> tokens)
{
    return Parser(tokens).whole_domain();
}

SourceModel parse_model_text(std::string_view text)
{
    auto tokens = tokenize(text);
    return parse_model(tokens);
}

SourceModel parse_param_text(std::string_view text)
{
    auto tokens = tokenize(text);
    return parse_param_file(tokens);
}

ExprPtr parse_expression_text(std::string_view text)
{
    auto tokens = tokenize(text);
    return parse_expression(tokens);
}

DomainPtr parse_domain_text(std::string_view text)
{
    auto tokens = tokenize(text);
    return parse_domain(tokens);
}

} // namespace eprime
