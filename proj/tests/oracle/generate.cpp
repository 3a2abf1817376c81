#include "generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oracle {

namespace {

constexpr double mag_cap = 1e6;

std::string lit(std::int64_t v)
{
    return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
}

std::string paren(const std::string& s)
{
    return "(" + s + ")";
}

double factorial_of(double m)
{
    double r = 1;
    for (int k = 2; k <= static_cast<int>(m); ++k)
        r *= k;
    return r;
}

} // namespace

int ModelGenerator::pick(int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

bool ModelGenerator::coin(int percent)
{
    return pick(1, 100) <= percent;
}

std::string ModelGenerator::domain_text(const std::vector<std::int64_t>& values)
{
    // contiguous runs usually written as ranges
    std::string out;
    for (std::size_t i = 0; i < values.size();) {
        std::size_t j = i;
        while (j + 1 < values.size() && values[j + 1] == values[j] + 1)
            ++j;
        std::string part;
        if (j > i && coin(80))
            part = std::to_string(values[i]) + ".." + std::to_string(values[j]);
        else
            for (std::size_t k = i; k <= j; ++k)
                part += (k > i ? ", " : "") + std::to_string(values[k]);
        out += (out.empty() ? "" : ", ") + part;
        i = j + 1;
    }
    return "int(" + out + ")";
}

std::string ModelGenerator::model()
{
    decls_.clear();
    qvars_.clear();
    fresh_ = 0;
    std::string text = "language ESSENCE' 1.0\n";
    int cells = 0;
    int n = 0;
    while (cells < opts_.max_cells && (n == 0 || coin(70))) {
        Cell c;
        c.name = std::string(1, static_cast<char>('a' + n));
        int room = opts_.max_cells - cells;
        int shape = pick(0, 9);
        c.dims = shape < 6 ? 0 : (shape < 9 || room < 4 ? 1 : 2);
        if (c.dims == 1 && room < 2)
            c.dims = 0;
        c.is_bool = coin(25);
        if (c.is_bool)
            c.values = {0, 1};
        else {
            int size = pick(1, opts_.max_values);
            std::set<std::int64_t> vs;
            int lo = pick(-3, 1);
            while (static_cast<int>(vs.size()) < size)
                vs.insert(pick(lo, lo + 4));
            c.values.assign(vs.begin(), vs.end());
        }
        std::string base = c.is_bool ? "bool" : domain_text(c.values);
        std::string dom = base;
        int used = 1;
        if (c.dims > 0) {
            std::int64_t first = pick(0, 1);
            int len = c.dims == 2 ? 2 : pick(2, std::min(3, room));
            for (int k = 0; k < len; ++k)
                c.keys.push_back(first + k);
            std::string ix = "int(" + std::to_string(first) + ".." + std::to_string(first + len - 1) + ")";
            dom = "matrix indexed by [" + ix + (c.dims == 2 ? ", " + ix : "") + "] of " + base;
            used = c.dims == 2 ? len * len : len;
        }
        if (cells + used > opts_.max_cells)
            break;
        cells += used;
        text += "find " + c.name + " : " + dom + "\n";
        decls_.push_back(c);
        ++n;
    }

    if (opts_.objective) {
        std::string obj;
        for (const auto& c : decls_) {
            int coef = pick(-3, 3);
            std::string ref;
            if (c.dims == 0)
                ref = c.name;
            else if (c.dims == 1)
                ref = c.name + "[" + std::to_string(c.keys[static_cast<std::size_t>(pick(0, static_cast<int>(c.keys.size()) - 1))]) + "]";
            else
                ref = c.name + "[" + std::to_string(c.keys[0]) + ", " + std::to_string(c.keys.back()) + "]";
            if (c.is_bool)
                ref = "toInt(" + ref + ")";
            obj += (obj.empty() ? "" : " + ") + lit(coef) + " * " + ref;
        }
        text += std::string(coin(50) ? "minimising " : "maximising ") + (obj.empty() ? "0" : obj) + "\n";
    }

    text += "such that\n";
    int k = pick(1, opts_.max_constraints);
    for (int i = 0; i < k; ++i)
        text += "  " + gen_bool(pick(1, opts_.max_depth)) + (i + 1 < k ? ",\n" : "\n");
    return text;
}

std::string ModelGenerator::ground_index(std::int64_t lo, std::int64_t hi)
{
    // in range most of the time, sometimes one past either end or through a partial op
    int r = pick(0, 9);
    if (!qvars_.empty() && r < 4) {
        const auto& q = qvars_[static_cast<std::size_t>(pick(0, static_cast<int>(qvars_.size()) - 1))];
        int s = pick(0, 4);
        if (s == 0)
            return q.first + " + 1";
        if (s == 1)
            return q.first + " / " + lit(pick(-1, 2));
        if (s == 2)
            return q.first + " % " + lit(pick(0, 2));
        return q.first;
    }
    if (r == 9)
        return "1 / 0";
    return lit(pick(static_cast<int>(lo) - 1, static_cast<int>(hi) + 1));
}

std::string ModelGenerator::cell_ref(bool want_bool)
{
    std::vector<const Cell*> ms;
    if (ground_only_)
        return "";
    for (const auto& c : decls_)
        if (c.dims > 0 && c.is_bool == want_bool)
            ms.push_back(&c);
    if (ms.empty())
        return "";
    const Cell& m = *ms[static_cast<std::size_t>(pick(0, static_cast<int>(ms.size()) - 1))];
    std::string s = m.name + "[" + ground_index(m.keys.front(), m.keys.back());
    if (m.dims == 2)
        s += ", " + ground_index(m.keys.front(), m.keys.back());
    return s + "]";
}

ModelGenerator::Expr ModelGenerator::int_leaf()
{
    std::vector<Expr> options;
    options.push_back({lit(pick(-3, 3)), 3});
    for (const auto& c : decls_)
        if (c.dims == 0 && !c.is_bool && !ground_only_) {
            double m = 0;
            for (auto v : c.values)
                m = std::max(m, std::fabs(static_cast<double>(v)));
            options.push_back({c.name, m});
        }
    for (const auto& q : qvars_)
        options.push_back({q.first, static_cast<double>(std::max(std::abs(q.second.first), std::abs(q.second.second)))});
    auto ref = cell_ref(false);
    if (!ref.empty())
        options.push_back({ref, 5});
    return options[static_cast<std::size_t>(pick(0, static_cast<int>(options.size()) - 1))];
}

std::string ModelGenerator::bool_leaf()
{
    std::vector<std::string> options;
    if (coin(30))
        options.push_back(coin(50) ? "true" : "false");
    for (const auto& c : decls_)
        if (c.dims == 0 && c.is_bool && !ground_only_)
            options.push_back(c.name);
    auto ref = cell_ref(true);
    if (!ref.empty())
        options.push_back(ref);
    auto a = int_leaf();
    auto b = int_leaf();
    options.push_back(a.text + " < " + b.text);
    return options[static_cast<std::size_t>(pick(0, static_cast<int>(options.size()) - 1))];
}

ModelGenerator::Expr ModelGenerator::gen_int(int depth)
{
    if (depth <= 0 || coin(20))
        return int_leaf();
    Expr out;
    int r = pick(0, 13);
    auto bin = [&]() {
        auto a = gen_int(depth - 1);
        auto b = gen_int(depth - 1);
        return std::make_pair(a, b);
    };
    switch (r) {
    case 0: case 1: {
        auto [a, b] = bin();
        out = {paren(a.text + (r == 0 ? " + " : " - ") + b.text), a.mag + b.mag};
        break;
    }
    case 2: {
        auto [a, b] = bin();
        out = {paren(a.text + " * " + b.text), a.mag * b.mag};
        break;
    }
    case 3: case 4: {
        auto [a, b] = bin();
        out = {paren(a.text + (r == 3 ? " / " : " % ") + b.text), r == 3 ? a.mag : b.mag};
        break;
    }
    case 5: {
        auto a = gen_int(depth - 1);
        auto b = gen_int(depth - 1);
        if (b.mag > 4)
            b = int_leaf();
        double m = std::pow(std::max(1.0, a.mag), std::max(1.0, b.mag));
        out = {paren(a.text + " ** " + b.text), m};
        break;
    }
    case 6: {
        auto a = gen_int(depth - 1);
        out = {coin(50) ? "(-" + a.text + ")" : "|" + a.text + "|", a.mag};
        break;
    }
    case 7: {
        auto [a, b] = bin();
        out = {std::string(coin(50) ? "min" : "max") + "(" + a.text + ", " + b.text + ")", std::max(a.mag, b.mag)};
        break;
    }
    case 8: out = {"toInt(" + gen_bool(depth - 1) + ")", 1}; break;
    case 9: {
        std::string q = "i" + std::to_string(fresh_++);
        int lo = pick(-1, 2);
        int hi = lo + pick(-1, 2);
        qvars_.push_back({q, {lo, hi}});
        auto body = gen_int(depth - 1);
        qvars_.pop_back();
        int n = std::max(0, hi - lo + 1);
        out = {"(sum " + q + " : int(" + std::to_string(lo) + ".." + std::to_string(hi) + ") . " + body.text + ")", n * body.mag};
        break;
    }
    case 10: {
        std::string q = "j" + std::to_string(fresh_++);
        int lo = pick(0, 2);
        int hi = lo + pick(0, 2);
        qvars_.push_back({q, {lo, hi}});
        auto body = gen_int(depth - 1);
        bool outer = ground_only_;
        ground_only_ = true;
        std::string cond = coin(50) ? ", " + gen_bool(depth - 1) : "";
        ground_only_ = outer;
        qvars_.pop_back();
        bool prod = coin(30);
        int n = hi - lo + 1;
        out = {std::string(prod ? "product" : "sum") + "([" + body.text + " | " + q + " : int(" + std::to_string(lo) + ".."
                + std::to_string(hi) + ")" + cond + "])",
            prod ? std::pow(std::max(1.0, body.mag), n) : n * body.mag};
        break;
    }
    case 11: {
        // factorial of a ground argument
        std::string arg = qvars_.empty() ? lit(pick(-1, 5)) : qvars_.back().first + " + " + lit(pick(-2, 2));
        out = {"factorial(" + arg + ")", factorial_of(8)};
        break;
    }
    default: {
        auto ref = cell_ref(false);
        out = ref.empty() ? int_leaf() : Expr{ref, 5};
        break;
    }
    }
    if (out.mag > mag_cap)
        return int_leaf();
    return out;
}

std::string ModelGenerator::int_list(int depth, int n)
{
    std::string s = "[";
    for (int i = 0; i < n; ++i)
        s += (i ? ", " : "") + gen_int(depth).text;
    return s + "]";
}

std::string ModelGenerator::global(int depth)
{
    int n = pick(1, 4);
    std::string xs = int_list(depth - 1, n);
    switch (pick(0, 7)) {
    case 0: return "allDiff(" + xs + ")";
    case 1: return "alldifferent_except(" + xs + ", " + lit(pick(-1, 2)) + ")";
    case 2: {
        int k = pick(1, 2);
        std::string vals = "[", cs = "[";
        for (int i = 0; i < k; ++i) {
            vals += (i ? ", " : "") + lit(pick(-1, 2));
            cs += (i ? ", " : "") + (coin(70) ? lit(pick(0, 2)) : gen_int(depth - 1).text);
        }
        return "gcc(" + xs + ", " + vals + "], " + cs + "])";
    }
    case 3:
    case 4: {
        int k = pick(1, 2);
        std::string vals = "[", cs = "[";
        for (int i = 0; i < k; ++i) {
            vals += (i ? ", " : "") + lit(pick(-1, 2));
            cs += (i ? ", " : "") + lit(pick(0, 3));
        }
        return std::string(coin(50) ? "atleast(" : "atmost(") + xs + ", " + cs + "], " + vals + "])";
    }
    case 5: {
        int rows = pick(1, 4);
        std::string t = "[";
        for (int r = 0; r < rows; ++r) {
            t += r ? ", [" : "[";
            for (int i = 0; i < n; ++i)
                t += (i ? ", " : "") + lit(pick(-2, 3));
            t += "]";
        }
        return "table(" + xs + ", " + t + "])";
    }
    case 6: {
        const char* ops[] = {"<lex", "<=lex", ">lex", ">=lex"};
        return paren(xs + " " + ops[pick(0, 3)] + " " + int_list(depth - 1, pick(1, 3)));
    }
    default: {
        std::string q = "k" + std::to_string(fresh_++);
        int lo = pick(0, 1);
        int hi = lo + pick(0, 2);
        qvars_.push_back({q, {lo, hi}});
        std::string body = gen_bool(depth - 1);
        qvars_.pop_back();
        return std::string(coin(50) ? "and" : "or") + "([" + body + " | " + q + " : int(" + std::to_string(lo) + ".."
            + std::to_string(hi) + ")])";
    }
    }
}

std::string ModelGenerator::gen_bool(int depth)
{
    if (depth <= 0 || coin(10))
        return bool_leaf();
    int r = pick(0, 11);
    switch (r) {
    case 0: case 1: case 2: {
        const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
        auto a = gen_int(depth - 1);
        auto b = gen_int(depth - 1);
        return paren(a.text + " " + ops[pick(0, 5)] + " " + b.text);
    }
    case 3: case 4: {
        const char* ops[] = {"/\\", "\\/", "->", "<->"};
        return paren(gen_bool(depth - 1) + " " + ops[pick(0, 3)] + " " + gen_bool(depth - 1));
    }
    case 5: return "!" + paren(gen_bool(depth - 1));
    case 6: {
        std::string q = "q" + std::to_string(fresh_++);
        int lo = pick(-1, 2);
        int hi = lo + pick(-1, 2);
        qvars_.push_back({q, {lo, hi}});
        std::string body = gen_bool(depth - 1);
        qvars_.pop_back();
        return "(" + std::string(coin(50) ? "forAll " : "exists ") + q + " : int(" + std::to_string(lo) + ".."
            + std::to_string(hi) + ") . " + body + ")";
    }
    case 7: {
        auto a = gen_int(depth - 1);
        int lo = pick(-2, 2);
        std::string set = coin(70) ? "int(" + std::to_string(lo) + ".." + std::to_string(lo + pick(0, 2)) + ", " + std::to_string(lo + 4) + ")"
                                   : "toSet([" + lit(lo) + ", " + lit(pick(-2, 2)) + "])";
        return paren(a.text + " in " + set);
    }
    case 8: case 9:
        if (opts_.globals)
            return global(depth);
        return bool_leaf();
    case 10: {
        const char* ops[] = {"=", "!="};
        return paren(gen_bool(depth - 1) + " " + ops[pick(0, 1)] + " " + gen_bool(depth - 1));
    }
    default: return bool_leaf();
    }
}

std::string ModelGenerator::ground_int(int depth)
{
    if (depth <= 0 || coin(15))
        return lit(pick(-20, 20));
    auto a = ground_int(depth - 1);
    auto b = ground_int(depth - 1);
    switch (pick(0, 9)) {
    case 0: return paren(a + " + " + b);
    case 1: return paren(a + " - " + b);
    case 2: return paren(a + " * " + b);
    case 3: return paren(a + " / " + b);
    case 4: return paren(a + " % " + b);
    case 5: return paren(a + " ** " + lit(pick(-1, 3)));
    case 6: return "|" + a + "|";
    case 7: return "(-" + a + ")";
    case 8: return std::string(coin(50) ? "min(" : "max(") + a + ", " + b + ")";
    default: return "toInt(" + a + " < " + b + ")";
    }
}

std::string ModelGenerator::int_over(const std::vector<std::string>& vars, int depth)
{
    if (depth <= 0 || coin(15))
        return coin(40) || vars.empty() ? lit(pick(-5, 5)) : vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))];
    auto a = int_over(vars, depth - 1);
    auto b = int_over(vars, depth - 1);
    switch (pick(0, 9)) {
    case 0: return paren(a + " + " + b);
    case 1: return paren(a + " - " + b);
    case 2: return paren(a + " * " + b);
    case 3: return paren(a + " / " + b);
    case 4: return paren(a + " % " + b);
    case 5: return paren(a + " ** " + lit(pick(0, 3)));
    case 6: return "|" + a + "|";
    case 7: return "(-" + a + ")";
    case 8: return std::string(coin(50) ? "min(" : "max(") + a + ", " + b + ")";
    default: return "toInt(" + a + " < " + b + ")";
    }
}

} // namespace oracle
