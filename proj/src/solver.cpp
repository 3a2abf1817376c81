#include "eprime/solver.hpp"

#include "eprime/arith.hpp"
#include "eprime/error.hpp"
#include "eprime/interval.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace eprime {

const char* to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unknown: return "unknown";
    }
    return "?";
}

// ---- SearchState ----

SearchState::SearchState(const FlatCSP& csp)
{
    doms_.reserve(csp.vars.size());
    for (const auto& v : csp.vars)
        doms_.push_back(v.dom.ranges());
    saved_at_.assign(doms_.size(), 0);
    is_changed_.assign(doms_.size(), 0);
}

bool SearchState::contains(int v, std::int64_t x) const
{
    const auto& rs = doms_[idx(v)];
    auto it = std::lower_bound(rs.begin(), rs.end(), x, [](const Range& r, std::int64_t y) { return r.hi < y; });
    return it != rs.end() && it->lo <= x;
}

std::uint64_t SearchState::count(int v) const
{
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 n = 0;
    for (const auto& r : doms_[idx(v)])
        n += static_cast<unsigned __int128>(static_cast<__int128>(r.hi) - r.lo + 1);
    return n > cap ? cap : static_cast<std::uint64_t>(n);
}

bool SearchState::update(int v, std::vector<Range> next)
{
    auto& cur = doms_[idx(v)];
    if (next == cur)
        return true;
    if (next.empty())
        return false;
    if (!marks_.empty() && saved_at_[idx(v)] != marks_.back().second) {
        trail_.emplace_back(v, cur);
        saved_at_[idx(v)] = marks_.back().second;
    }
    cur = std::move(next);
    if (!is_changed_[idx(v)]) {
        is_changed_[idx(v)] = 1;
        changed_.push_back(v);
    }
    return true;
}

bool SearchState::set_min(int v, std::int64_t x)
{
    if (min(v) >= x)
        return true;
    std::vector<Range> out;
    for (const auto& r : doms_[idx(v)]) {
        if (r.hi < x)
            continue;
        out.push_back({std::max(r.lo, x), r.hi});
    }
    return update(v, std::move(out));
}

bool SearchState::set_max(int v, std::int64_t x)
{
    if (max(v) <= x)
        return true;
    std::vector<Range> out;
    for (const auto& r : doms_[idx(v)]) {
        if (r.lo > x)
            break;
        out.push_back({r.lo, std::min(r.hi, x)});
    }
    return update(v, std::move(out));
}

bool SearchState::remove(int v, std::int64_t x)
{
    if (!contains(v, x))
        return true;
    std::vector<Range> out;
    for (const auto& r : doms_[idx(v)]) {
        if (x < r.lo || x > r.hi) {
            out.push_back(r);
            continue;
        }
        if (r.lo < x)
            out.push_back({r.lo, x - 1});
        if (x < r.hi)
            out.push_back({x + 1, r.hi});
    }
    return update(v, std::move(out));
}

bool SearchState::assign(int v, std::int64_t x)
{
    if (!contains(v, x))
        return false;
    return update(v, {{x, x}});
}

bool SearchState::restrict(int v, const IntDomain& allowed)
{
    IntDomain d = IntDomain::from_ranges(doms_[idx(v)]).intersect(allowed);
    return update(v, d.ranges());
}

bool SearchState::restrict_values(int v, std::vector<std::int64_t> vals)
{
    std::vector<Range> out;
    for (auto x : vals) {
        if (!out.empty() && out.back().hi != int_max && out.back().hi + 1 == x)
            out.back().hi = x;
        else if (out.empty() || out.back().hi < x)
            out.push_back({x, x});
    }
    // intersect with the current domain
    IntDomain d = IntDomain::from_ranges(doms_[idx(v)]).intersect(IntDomain::from_ranges(out));
    return update(v, d.ranges());
}

void SearchState::push_level()
{
    marks_.emplace_back(trail_.size(), ++stamp_);
}

void SearchState::pop_level()
{
    std::size_t mark = marks_.back().first;
    while (trail_.size() > mark) {
        auto& [v, rs] = trail_.back();
        doms_[idx(v)] = std::move(rs);
        trail_.pop_back();
    }
    marks_.pop_back();
    for (int v : changed_)
        is_changed_[idx(v)] = 0;
    changed_.clear();
}

std::uint64_t SearchState::checksum() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    for (const auto& rs : doms_) {
        mix(rs.size());
        for (const auto& r : rs) {
            mix(static_cast<std::uint64_t>(r.lo));
            mix(static_cast<std::uint64_t>(r.hi));
        }
    }
    return h;
}

std::vector<int> SearchState::take_changed()
{
    std::vector<int> out;
    out.swap(changed_);
    for (int v : out)
        is_changed_[idx(v)] = 0;
    return out;
}

// ---- propagation ----

namespace {
    using i128 = __int128;
    constexpr std::uint64_t enum_limit = 4096;

    i128 floor_div128(i128 a, i128 b)
    {
        i128 q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0)))
            --q;
        return q;
    }

    std::int64_t clamp(i128 v) { return arith::clamp(v); }

    std::vector<std::int64_t> values_of(const SearchState& s, int v)
    {
        std::vector<std::int64_t> out;
        for (const auto& r : s.ranges(v))
            for (std::int64_t x = r.lo;; ++x) {
                out.push_back(x);
                if (x == r.hi)
                    break;
            }
        return out;
    }

    /// Totalized binary functions; nullopt when the 64-bit result overflows.
    std::optional<std::int64_t> apply(FlatKind k, std::int64_t x, std::int64_t y)
    {
        switch (k) {
        case FlatKind::Times: return arith::mul(x, y);
        case FlatKind::Div:
            if (y == 0)
                return 0;
            if (x == int_min && y == -1)
                return std::nullopt;
            return arith::floor_div(x, y);
        case FlatKind::Mod:
            if (y == 0)
                return 0;
            return arith::floor_mod(x, y);
        case FlatKind::Pow:
            if (!arith::pow_defined(x, y))
                return 0;
            return arith::pow(x, y);
        default: return std::nullopt;
        }
    }

    class Engine {
    public:
        Engine(const FlatCSP& csp, SearchState& s) : csp_(csp), s_(s), watches_(csp.vars.size()), queued_(csp.constraints.size(), 0)
        {
            for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
                const auto& k = csp.constraints[c];
                std::unordered_set<int> vs(k.vars.begin(), k.vars.end());
                for (const auto& l : k.lits)
                    vs.insert(l.var);
                if (k.reif)
                    vs.insert(k.reif->var);
                std::vector<int> sorted(vs.begin(), vs.end());
                std::sort(sorted.begin(), sorted.end());
                for (int v : sorted)
                    watches_[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
            }
        }

        void enqueue_all()
        {
            for (std::size_t c = 0; c < csp_.constraints.size(); ++c)
                enqueue(static_cast<int>(c));
        }

        /// Fixpoint over the queue plus constraints on changed variables.
        bool run()
        {
            absorb_changes();
            while (!queue_.empty()) {
                int c = queue_.back();
                queue_.pop_back();
                queued_[static_cast<std::size_t>(c)] = 0;
                if (!prop(csp_.constraints[static_cast<std::size_t>(c)])) {
                    clear();
                    return false;
                }
                absorb_changes();
            }
            return true;
        }

        void clear()
        {
            for (int c : queue_)
                queued_[static_cast<std::size_t>(c)] = 0;
            queue_.clear();
            s_.take_changed();
        }

    private:
        const FlatCSP& csp_;
        SearchState& s_;
        std::vector<std::vector<int>> watches_;
        std::vector<int> queue_;
        std::vector<char> queued_;

        void enqueue(int c)
        {
            if (!queued_[static_cast<std::size_t>(c)]) {
                queued_[static_cast<std::size_t>(c)] = 1;
                queue_.push_back(c);
            }
        }

        void absorb_changes()
        {
            for (int v : s_.take_changed())
                for (int c : watches_[static_cast<std::size_t>(v)])
                    enqueue(c);
        }

        // literal helpers
        std::optional<bool> lit(const Lit& l) const
        {
            if (!s_.fixed(l.var))
                return std::nullopt;
            return (s_.min(l.var) != 0) != l.neg;
        }
        bool set_lit(const Lit& l, bool b) { return s_.assign(l.var, (b != l.neg) ? 1 : 0); }

        bool prop(const FlatConstraint& c)
        {
            switch (c.kind) {
            case FlatKind::Linear: return linear(c);
            case FlatKind::Times:
            case FlatKind::Div:
            case FlatKind::Mod:
            case FlatKind::Pow: return binary_fn(c);
            case FlatKind::Abs: return abs_fn(c);
            case FlatKind::Min:
            case FlatKind::Max: return extremum(c);
            case FlatKind::Clause: return clause(c);
            case FlatKind::InSet: return in_set(c);
            case FlatKind::AllDiff: return alldiff(c, std::nullopt);
            case FlatKind::AllDiffExcept: return alldiff(c, c.vals[0]);
            case FlatKind::Gcc:
            case FlatKind::AtLeast:
            case FlatKind::AtMost: return counting(c);
            case FlatKind::Table: return table(c);
            case FlatKind::Lex: return lex(c);
            }
            return true;
        }

        // sum(sign*coef*x) rel rhs
        struct Sums {
            i128 lo = 0, hi = 0;
            std::size_t unfixed = 0;
            std::size_t last_unfixed = 0;
        };

        Sums sums(const FlatConstraint& c, int sign) const
        {
            Sums r;
            for (std::size_t i = 0; i < c.vars.size(); ++i) {
                i128 a = static_cast<i128>(c.coefs[i]) * sign;
                i128 x = a * s_.min(c.vars[i]), y = a * s_.max(c.vars[i]);
                r.lo += std::min(x, y);
                r.hi += std::max(x, y);
                if (a != 0 && !s_.fixed(c.vars[i])) {
                    ++r.unfixed;
                    r.last_unfixed = i;
                }
            }
            return r;
        }

        bool le(const FlatConstraint& c, int sign, i128 rhs)
        {
            Sums t = sums(c, sign);
            if (t.lo > rhs)
                return false;
            if (t.hi <= rhs)
                return true;
            for (std::size_t i = 0; i < c.vars.size(); ++i) {
                int v = c.vars[i];
                i128 a = static_cast<i128>(c.coefs[i]) * sign;
                i128 own = std::min(a * s_.min(v), a * s_.max(v));
                i128 slack = rhs - (t.lo - own);
                if (a == 0)
                    continue;
                if (a > 0) {
                    i128 m = floor_div128(slack, a);
                    if (m < s_.max(v) && !s_.set_max(v, clamp(m)))
                        return false;
                }
                else {
                    i128 m = -floor_div128(slack, -a);
                    if (m > s_.min(v) && !s_.set_min(v, clamp(m)))
                        return false;
                }
            }
            return true;
        }

        bool eq(const FlatConstraint& c, i128 rhs)
        {
            if (!le(c, 1, rhs) || !le(c, -1, -rhs))
                return false;
            Sums t = sums(c, 1);
            if (t.unfixed == 0)
                return t.lo == rhs;
            if (t.unfixed == 1) {
                std::size_t k = t.last_unfixed;
                i128 rest = 0;
                for (std::size_t i = 0; i < c.vars.size(); ++i)
                    if (i != k)
                        rest += static_cast<i128>(c.coefs[i]) * s_.min(c.vars[i]);
                i128 need = rhs - rest, a = c.coefs[k];
                if (need % a != 0)
                    return false;
                i128 x = need / a;
                if (x < int_min || x > int_max)
                    return false;
                return s_.assign(c.vars[k], static_cast<std::int64_t>(x));
            }
            return true;
        }

        bool ne(const FlatConstraint& c, i128 rhs)
        {
            Sums t = sums(c, 1);
            if (t.unfixed == 0)
                return t.lo != rhs;
            if (t.unfixed == 1) {
                std::size_t k = t.last_unfixed;
                i128 rest = 0;
                for (std::size_t i = 0; i < c.vars.size(); ++i)
                    if (i != k)
                        rest += static_cast<i128>(c.coefs[i]) * s_.min(c.vars[i]);
                i128 need = rhs - rest, a = c.coefs[k];
                if (need % a == 0 && need / a >= int_min && need / a <= int_max)
                    return s_.remove(c.vars[k], static_cast<std::int64_t>(need / a));
            }
            return true;
        }

        /// Truth of the relation when decided by the current bounds.
        std::optional<bool> entailed(const FlatConstraint& c) const
        {
            Sums t = sums(c, 1);
            i128 rhs = c.rhs;
            switch (c.rel) {
            case LinRel::Le:
                if (t.hi <= rhs)
                    return true;
                if (t.lo > rhs)
                    return false;
                return std::nullopt;
            case LinRel::Eq:
            case LinRel::Ne: {
                std::optional<bool> is_eq;
                if (rhs < t.lo || rhs > t.hi)
                    is_eq = false;
                else if (t.lo == t.hi)
                    is_eq = true;
                if (!is_eq)
                    return std::nullopt;
                return c.rel == LinRel::Eq ? *is_eq : !*is_eq;
            }
            }
            return std::nullopt;
        }

        bool enforce(const FlatConstraint& c, bool positive)
        {
            i128 rhs = c.rhs;
            switch (c.rel) {
            case LinRel::Le: return positive ? le(c, 1, rhs) : le(c, -1, -rhs - 1);
            case LinRel::Eq: return positive ? eq(c, rhs) : ne(c, rhs);
            case LinRel::Ne: return positive ? ne(c, rhs) : eq(c, rhs);
            }
            return true;
        }

        bool linear(const FlatConstraint& c)
        {
            if (!c.reif)
                return enforce(c, true);
            if (auto b = lit(*c.reif))
                return enforce(c, *b);
            if (auto e = entailed(c))
                return set_lit(*c.reif, *e);
            return true;
        }

        bool binary_fn(const FlatConstraint& c)
        {
            int x = c.vars[0], y = c.vars[1], z = c.vars[2];
            std::uint64_t nx = s_.count(x), ny = s_.count(y);
            bool same = x == y;
            if (nx <= enum_limit && (same || ny <= enum_limit) && (same || nx * ny <= enum_limit)) {
                auto xs = values_of(s_, x);
                auto ys = same ? xs : values_of(s_, y);
                std::vector<std::int64_t> sx, sy, sz;
                for (auto a : xs) {
                    bool any = false;
                    for (auto b : ys) {
                        if (same && a != b)
                            continue;
                        auto r = apply(c.kind, a, b);
                        if (r && s_.contains(z, *r)) {
                            any = true;
                            sy.push_back(b);
                            sz.push_back(*r);
                        }
                    }
                    if (any)
                        sx.push_back(a);
                }
                auto uniq = [](std::vector<std::int64_t>& v) {
                    std::sort(v.begin(), v.end());
                    v.erase(std::unique(v.begin(), v.end()), v.end());
                };
                uniq(sy);
                uniq(sz);
                if (sx.empty())
                    return false;
                return s_.restrict_values(x, sx) && s_.restrict_values(y, sy) && s_.restrict_values(z, sz);
            }
            Interval bx{s_.min(x), s_.max(x)}, by{s_.min(y), s_.max(y)};
            Interval r;
            switch (c.kind) {
            case FlatKind::Times: r = interval::mul(bx, by); break;
            case FlatKind::Div: r = interval::div(bx, by); break;
            case FlatKind::Mod: r = interval::mod(bx, by); break;
            default: r = interval::pow(bx, by); break;
            }
            return s_.set_min(z, r.lo) && s_.set_max(z, r.hi);
        }

        bool abs_fn(const FlatConstraint& c)
        {
            int x = c.vars[0], z = c.vars[1];
            if (s_.count(x) <= enum_limit) {
                std::vector<std::int64_t> sx, sz;
                for (auto a : values_of(s_, x)) {
                    auto r = arith::abs(a);
                    if (r && s_.contains(z, *r)) {
                        sx.push_back(a);
                        sz.push_back(*r);
                    }
                }
                std::sort(sz.begin(), sz.end());
                sz.erase(std::unique(sz.begin(), sz.end()), sz.end());
                if (sx.empty())
                    return false;
                return s_.restrict_values(x, sx) && s_.restrict_values(z, sz);
            }
            Interval r = interval::abs({s_.min(x), s_.max(x)});
            if (!s_.set_min(z, r.lo) || !s_.set_max(z, r.hi))
                return false;
            std::int64_t m = s_.max(z);
            return s_.set_min(x, -m) && s_.set_max(x, m);
        }

        bool extremum(const FlatConstraint& c)
        {
            bool is_min = c.kind == FlatKind::Min;
            std::size_t n = c.vars.size() - 1;
            int z = c.vars[n];
            // work in the min orientation by negating for max
            auto lo = [&](int v) { return is_min ? s_.min(v) : -static_cast<i128>(s_.max(v)); };
            auto hi = [&](int v) { return is_min ? s_.max(v) : -static_cast<i128>(s_.min(v)); };
            i128 zl = std::numeric_limits<std::int64_t>::max(), zh = zl;
            zl = lo(c.vars[0]);
            zh = hi(c.vars[0]);
            for (std::size_t i = 1; i < n; ++i) {
                zl = std::min(zl, lo(c.vars[i]));
                zh = std::min(zh, hi(c.vars[i]));
            }
            bool ok = is_min ? (s_.set_min(z, clamp(zl)) && s_.set_max(z, clamp(zh)))
                             : (s_.set_max(z, clamp(-zl)) && s_.set_min(z, clamp(-zh)));
            if (!ok)
                return false;
            i128 z_lo = lo(z), z_hi = hi(z);
            std::size_t candidates = 0, last = 0;
            for (std::size_t i = 0; i < n; ++i) {
                int v = c.vars[i];
                bool raised = is_min ? s_.set_min(v, clamp(z_lo)) : s_.set_max(v, clamp(-z_lo));
                if (!raised)
                    return false;
                if (lo(v) <= z_hi) {
                    ++candidates;
                    last = i;
                }
            }
            if (candidates == 0)
                return false;
            if (candidates == 1) {
                int v = c.vars[last];
                return is_min ? s_.set_max(v, clamp(z_hi)) : s_.set_min(v, clamp(-z_hi));
            }
            return true;
        }

        bool clause(const FlatConstraint& c)
        {
            const Lit* open = nullptr;
            std::size_t n_open = 0;
            for (const auto& l : c.lits) {
                auto v = lit(l);
                if (!v) {
                    ++n_open;
                    open = &l;
                    if (n_open > 1)
                        return true;
                }
                else if (*v)
                    return true;
            }
            if (n_open == 0)
                return false;
            return set_lit(*open, true);
        }

        bool in_set(const FlatConstraint& c)
        {
            int x = c.vars[0];
            std::optional<bool> b = true;
            if (c.reif)
                b = lit(*c.reif);
            if (b) {
                if (*b)
                    return s_.restrict(x, c.set);
                return s_.restrict(x, IntDomain::unbounded().subtract(c.set));
            }
            IntDomain d = s_.domain(x);
            if (d.subtract(c.set).empty())
                return set_lit(*c.reif, true);
            if (d.intersect(c.set).empty())
                return set_lit(*c.reif, false);
            return true;
        }

        bool alldiff(const FlatConstraint& c, std::optional<std::int64_t> except)
        {
            const auto& xs = c.vars;
            // repeatedly strip fixed values from the other variables
            bool again = true;
            std::vector<char> done(xs.size(), 0);
            while (again) {
                again = false;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (done[i] || !s_.fixed(xs[i]))
                        continue;
                    done[i] = 1;
                    std::int64_t v = s_.min(xs[i]);
                    if (except && v == *except)
                        continue;
                    for (std::size_t j = 0; j < xs.size(); ++j) {
                        if (j == i)
                            continue;
                        if (xs[j] == xs[i])
                            return false;
                        bool was = s_.fixed(xs[j]);
                        if (!s_.remove(xs[j], v))
                            return false;
                        if (!was && s_.fixed(xs[j]))
                            again = true;
                    }
                }
            }
            if (except)
                return true;
            // pigeonhole over the union of the domains
            IntDomain all;
            for (int v : xs) {
                if (s_.count(v) > enum_limit)
                    return true;
                all = all.unite(s_.domain(v));
            }
            return all.size() >= xs.size();
        }

        bool counting(const FlatConstraint& c)
        {
            std::size_t nx = c.kind == FlatKind::Gcc ? c.split : c.vars.size();
            for (std::size_t i = 0; i < c.vals.size(); ++i) {
                std::int64_t val = c.vals[i];
                std::int64_t lo = 0, hi = 0;
                for (std::size_t k = 0; k < nx; ++k) {
                    int v = c.vars[k];
                    if (s_.contains(v, val)) {
                        ++hi;
                        if (s_.fixed(v))
                            ++lo;
                    }
                }
                std::int64_t need_lo, need_hi;
                if (c.kind == FlatKind::Gcc) {
                    int cnt = c.vars[nx + i];
                    if (!s_.set_min(cnt, lo) || !s_.set_max(cnt, hi))
                        return false;
                    need_lo = s_.min(cnt);
                    need_hi = s_.max(cnt);
                }
                else if (c.kind == FlatKind::AtLeast) {
                    need_lo = c.counts[i];
                    need_hi = int_max;
                }
                else {
                    need_lo = int_min;
                    need_hi = c.counts[i];
                }
                if (lo > need_hi || hi < need_lo)
                    return false;
                if (lo == need_hi) {
                    for (std::size_t k = 0; k < nx; ++k)
                        if (!s_.fixed(c.vars[k]) && !s_.remove(c.vars[k], val))
                            return false;
                }
                else if (hi == need_lo) {
                    for (std::size_t k = 0; k < nx; ++k)
                        if (s_.contains(c.vars[k], val) && !s_.assign(c.vars[k], val))
                            return false;
                }
            }
            return true;
        }

        bool table(const FlatConstraint& c)
        {
            std::size_t n = c.vars.size();
            std::vector<std::vector<std::int64_t>> sup(n);
            bool any = false;
            for (const auto& row : c.tuples) {
                bool ok = true;
                for (std::size_t k = 0; k < n && ok; ++k) {
                    ok = s_.contains(c.vars[k], row[k]);
                    for (std::size_t j = 0; j < k && ok; ++j)
                        if (c.vars[j] == c.vars[k] && row[j] != row[k])
                            ok = false;
                }
                if (!ok)
                    continue;
                any = true;
                for (std::size_t k = 0; k < n; ++k)
                    sup[k].push_back(row[k]);
            }
            if (!any)
                return false;
            for (std::size_t k = 0; k < n; ++k) {
                auto& v = sup[k];
                std::sort(v.begin(), v.end());
                v.erase(std::unique(v.begin(), v.end()), v.end());
                if (!s_.restrict_values(c.vars[k], v))
                    return false;
            }
            return true;
        }

        bool lex(const FlatConstraint& c)
        {
            std::size_t n = c.split, m = c.vars.size() - c.split;
            std::size_t common = std::min(n, m);
            // outcome when the common prefix is entirely equal
            bool tail_ok = c.strict ? n < m : n <= m;
            for (std::size_t i = 0; i < common; ++i) {
                int x = c.vars[i], y = c.vars[n + i];
                if (s_.fixed(x) && s_.fixed(y) && s_.min(x) == s_.min(y))
                    continue;
                // position i decides unless x_i = y_i
                bool strict_here = (i + 1 == common) && !tail_ok;
                std::int64_t ymax = s_.max(y), xmin = s_.min(x);
                if (strict_here) {
                    if (ymax == int_min || xmin == int_max)
                        return false;
                    if (!s_.set_max(x, ymax - 1) || !s_.set_min(y, xmin + 1))
                        return false;
                }
                else if (!s_.set_max(x, ymax) || !s_.set_min(y, xmin))
                    return false;
                return true;
            }
            return tail_ok;
        }
    };
}

bool propagate(SearchState& state, const FlatCSP& csp)
{
    Engine e(csp, state);
    e.enqueue_all();
    return e.run();
}

// ---- search ----

namespace {
    class Search {
    public:
        Search(const FlatCSP& csp, const SolverConfig& cfg) : csp_(csp), cfg_(cfg), s_(csp), engine_(csp, s_)
        {
            std::vector<char> placed(csp.vars.size(), 0);
            for (int v : csp.branch_order)
                if (!placed[static_cast<std::size_t>(v)]) {
                    placed[static_cast<std::size_t>(v)] = 1;
                    branch_list_.push_back(v);
                }
            order_ = branch_list_;
            for (std::size_t v = 0; v < csp.vars.size(); ++v)
                if (!csp.vars[v].is_aux && !placed[v])
                    order_.push_back(static_cast<int>(v));
            for (std::size_t v = 0; v < csp.vars.size(); ++v)
                if (csp.vars[v].is_aux)
                    aux_.push_back(static_cast<int>(v));
            sdf_ = csp.heuristic == "sdf";
            start_ = std::chrono::steady_clock::now();
        }

        SearchOutcome run()
        {
            SearchOutcome out;
            bool empty = csp_.trivially_unsat;
            for (std::size_t v = 0; v < csp_.vars.size() && !empty; ++v)
                empty = csp_.vars[v].dom.empty();
            if (!empty) {
                engine_.enqueue_all();
                if (engine_.run())
                    node();
            }
            out.stats = stats_;
            out.stats.seconds = elapsed();
            out.solutions = std::move(solutions_);
            bool found = best_.has_value();
            if (found)
                out.assignment = *best_;
            if (cfg_.mode == SolveMode::Optimize && found && csp_.objective)
                out.objective = (*best_)[static_cast<std::size_t>(csp_.objective->var)];
            if (found)
                out.status = cfg_.mode == SolveMode::Optimize && !stats_.limit_reached ? SolveStatus::Optimal : SolveStatus::Sat;
            else
                out.status = stats_.limit_reached ? SolveStatus::Unknown : SolveStatus::Unsat;
            return out;
        }

    private:
        const FlatCSP& csp_;
        const SolverConfig& cfg_;
        SearchState s_;
        Engine engine_;
        std::vector<int> branch_list_, order_, aux_;
        bool sdf_ = false;
        bool stop_ = false;
        std::optional<Assignment> best_;
        std::vector<Assignment> solutions_;
        SearchStats stats_;
        std::chrono::steady_clock::time_point start_;

        double elapsed() const
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        }

        bool out_of_budget()
        {
            if (cfg_.node_limit && stats_.nodes >= cfg_.node_limit)
                stats_.limit_reached = true;
            if (cfg_.time_limit > 0 && (stats_.nodes & 255) == 0 && elapsed() > cfg_.time_limit)
                stats_.limit_reached = true;
            if (stats_.limit_reached)
                stop_ = true;
            return stop_;
        }

        int pick(bool aux_phase)
        {
            if (aux_phase) {
                for (int v : aux_)
                    if (!s_.fixed(v))
                        return v;
                return -1;
            }
            if (sdf_) {
                int best = -1;
                std::uint64_t size = 0;
                for (int v : branch_list_)
                    if (!s_.fixed(v) && (best < 0 || s_.count(v) < size)) {
                        best = v;
                        size = s_.count(v);
                    }
                if (best >= 0)
                    return best;
            }
            for (int v : order_)
                if (!s_.fixed(v))
                    return v;
            return -1;
        }

        /// Tightens the objective below the incumbent; false on conflict.
        bool bound()
        {
            if (cfg_.mode != SolveMode::Optimize || !csp_.objective || !best_)
                return true;
            int o = csp_.objective->var;
            std::int64_t b = (*best_)[static_cast<std::size_t>(o)];
            bool ok = csp_.objective->maximise ? (b != int_max && s_.set_min(o, b + 1)) : (b != int_min && s_.set_max(o, b - 1));
            return ok && engine_.run();
        }

        void record()
        {
            Assignment a(csp_.vars.size());
            for (std::size_t v = 0; v < a.size(); ++v)
                a[v] = s_.min(static_cast<int>(v));
            best_ = a;
            if (cfg_.mode == SolveMode::All) {
                solutions_.push_back(std::move(a));
                if (cfg_.solution_cap && solutions_.size() >= cfg_.solution_cap)
                    stop_ = true;
            }
            else if (cfg_.mode == SolveMode::First)
                stop_ = true;
        }

        // depth-first search; aux_phase searches for one completion only
        bool node(bool aux_phase = false)
        {
            int v = pick(aux_phase);
            if (v < 0) {
                if (!aux_phase) {
                    if (aux_.empty() || std::all_of(aux_.begin(), aux_.end(), [&](int a) { return s_.fixed(a); })) {
                        record();
                        return true;
                    }
                    s_.push_level();
                    bool found = node(true);
                    s_.pop_level();
                    return found;
                }
                record();
                return true;
            }
            for (;;) {
                if (out_of_budget())
                    return false;
                std::int64_t x = s_.min(v);
                ++stats_.nodes;
                s_.push_level();
                bool found = false;
                if (s_.assign(v, x) && engine_.run() && bound())
                    found = node(aux_phase);
                else {
                    engine_.clear();
                    ++stats_.backtracks;
                }
                s_.pop_level();
                if (stop_ || (aux_phase && found))
                    return found;
                if (!s_.remove(v, x) || !engine_.run() || !bound()) {
                    engine_.clear();
                    ++stats_.backtracks;
                    return false;
                }
            }
        }
    };
}

SearchOutcome solve(const FlatCSP& csp, const SolverConfig& config)
{
    if (config.mode == SolveMode::Optimize)
        return optimize(csp, config);
    Search s(csp, config);
    return s.run();
}

SearchOutcome optimize(const FlatCSP& csp, const SolverConfig& config)
{
    SolverConfig cfg = config;
    cfg.mode = csp.objective ? SolveMode::Optimize : SolveMode::First;
    Search s(csp, cfg);
    SearchOutcome out = s.run();
    if (csp.objective && !csp.branch_order.empty())
        out.notes.push_back("optimisation ranges over all decision variables, not only the branching list");
    return out;
}

// ---- verification ----

bool verify_solution(const FlatCSP& csp, const Assignment& a)
{
    if (a.size() != csp.vars.size())
        fail(ErrorKind::Internal, {}, "partial assignment: " + std::to_string(a.size()) + " of "
                + std::to_string(csp.vars.size()) + " variables have values");
    if (csp.trivially_unsat)
        return false;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (!csp.vars[v].dom.contains(a[v]))
            return false;
    auto val = [&](int v) { return a[static_cast<std::size_t>(v)]; };
    auto truth = [&](const Lit& l) { return (val(l.var) != 0) != l.neg; };
    for (const auto& c : csp.constraints) {
        bool ok = true;
        switch (c.kind) {
        case FlatKind::Linear: {
            __int128 sum = 0;
            for (std::size_t i = 0; i < c.vars.size(); ++i)
                sum += static_cast<__int128>(c.coefs[i]) * val(c.vars[i]);
            bool holds = c.rel == LinRel::Eq ? sum == c.rhs : c.rel == LinRel::Ne ? sum != c.rhs : sum <= c.rhs;
            ok = c.reif ? holds == truth(*c.reif) : holds;
            break;
        }
        case FlatKind::Times:
        case FlatKind::Div:
        case FlatKind::Mod:
        case FlatKind::Pow: {
            std::int64_t x = val(c.vars[0]), y = val(c.vars[1]), z = val(c.vars[2]);
            std::optional<std::int64_t> r;
            if (c.kind == FlatKind::Times)
                r = arith::mul(x, y);
            else if (c.kind == FlatKind::Pow)
                r = arith::pow_defined(x, y) ? arith::pow(x, y) : std::optional<std::int64_t>(0);
            else if (y == 0)
                r = 0;
            else if (c.kind == FlatKind::Div)
                r = (x == int_min && y == -1) ? std::nullopt : std::optional<std::int64_t>(arith::floor_div(x, y));
            else
                r = arith::floor_mod(x, y);
            ok = r && *r == z;
            break;
        }
        case FlatKind::Abs: {
            auto r = arith::abs(val(c.vars[0]));
            ok = r && *r == val(c.vars[1]);
            break;
        }
        case FlatKind::Min:
        case FlatKind::Max: {
            std::int64_t best = val(c.vars[0]);
            for (std::size_t i = 1; i + 1 < c.vars.size(); ++i)
                best = c.kind == FlatKind::Min ? std::min(best, val(c.vars[i])) : std::max(best, val(c.vars[i]));
            ok = best == val(c.vars.back());
            break;
        }
        case FlatKind::Clause:
            ok = std::any_of(c.lits.begin(), c.lits.end(), truth);
            break;
        case FlatKind::InSet: {
            bool in = c.set.contains(val(c.vars[0]));
            ok = c.reif ? in == truth(*c.reif) : in;
            break;
        }
        case FlatKind::AllDiff:
        case FlatKind::AllDiffExcept:
            for (std::size_t i = 0; i < c.vars.size() && ok; ++i)
                for (std::size_t j = i + 1; j < c.vars.size() && ok; ++j)
                    if (val(c.vars[i]) == val(c.vars[j])
                        && !(c.kind == FlatKind::AllDiffExcept && val(c.vars[i]) == c.vals[0]))
                        ok = false;
            break;
        case FlatKind::Gcc:
        case FlatKind::AtLeast:
        case FlatKind::AtMost: {
            std::size_t nx = c.kind == FlatKind::Gcc ? c.split : c.vars.size();
            for (std::size_t i = 0; i < c.vals.size() && ok; ++i) {
                std::int64_t n = 0;
                for (std::size_t k = 0; k < nx; ++k)
                    n += val(c.vars[k]) == c.vals[i] ? 1 : 0;
                if (c.kind == FlatKind::Gcc)
                    ok = n == val(c.vars[nx + i]);
                else if (c.kind == FlatKind::AtLeast)
                    ok = n >= c.counts[i];
                else
                    ok = n <= c.counts[i];
            }
            break;
        }
        case FlatKind::Table: {
            ok = false;
            for (const auto& row : c.tuples) {
                bool match = true;
                for (std::size_t k = 0; k < row.size() && match; ++k)
                    match = row[k] == val(c.vars[k]);
                if (match) {
                    ok = true;
                    break;
                }
            }
            break;
        }
        case FlatKind::Lex: {
            std::size_t n = c.split, m = c.vars.size() - c.split;
            int cmp = 0;
            for (std::size_t i = 0; i < std::min(n, m) && cmp == 0; ++i) {
                std::int64_t x = val(c.vars[i]), y = val(c.vars[n + i]);
                cmp = x < y ? -1 : x > y ? 1 : 0;
            }
            if (cmp == 0)
                cmp = n < m ? -1 : n > m ? 1 : 0;
            ok = c.strict ? cmp < 0 : cmp <= 0;
            break;
        }
        }
        if (!ok)
            return false;
    }
    return true;
}

} // namespace eprime
