#include "eprime/interval.hpp"

#include "eprime/arith.hpp"

#include <vector>

namespace eprime::interval {

using arith::clamp;

Interval add(Interval a, Interval b)
{
    return {clamp(static_cast<__int128>(a.lo) + b.lo), clamp(static_cast<__int128>(a.hi) + b.hi)};
}

Interval sub(Interval a, Interval b)
{
    return {clamp(static_cast<__int128>(a.lo) - b.hi), clamp(static_cast<__int128>(a.hi) - b.lo)};
}

Interval neg(Interval a)
{
    return {clamp(-static_cast<__int128>(a.hi)), clamp(-static_cast<__int128>(a.lo))};
}

Interval mul(Interval a, Interval b)
{
    __int128 c[4] = {static_cast<__int128>(a.lo) * b.lo, static_cast<__int128>(a.lo) * b.hi,
        static_cast<__int128>(a.hi) * b.lo, static_cast<__int128>(a.hi) * b.hi};
    return {clamp(*std::min_element(c, c + 4)), clamp(*std::max_element(c, c + 4))};
}

namespace {
    // Floor division is monotone in each argument over a sign-constant divisor.
    void div_piece(Interval a, std::int64_t blo, std::int64_t bhi, std::vector<std::int64_t>& out)
    {
        for (std::int64_t x : {a.lo, a.hi})
            for (std::int64_t y : {blo, bhi})
                out.push_back(arith::floor_div(x, y));
    }
}

Interval div(Interval a, Interval b)
{
    std::vector<std::int64_t> c;
    if (b.contains(0))
        c.push_back(0);
    if (b.lo <= -1)
        div_piece(a, b.lo, std::min<std::int64_t>(b.hi, -1), c);
    if (b.hi >= 1)
        div_piece(a, std::max<std::int64_t>(b.lo, 1), b.hi, c);
    return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
}

Interval mod(Interval a, Interval b)
{
    // Result has the divisor's sign and magnitude below |b|.
    std::int64_t lo = 0, hi = 0;
    if (b.hi >= 1) {
        hi = b.hi - 1;
        if (a.lo >= 0)
            hi = std::min(hi, a.hi);
    }
    if (b.lo <= -1) {
        lo = b.lo + 1;
        if (a.hi <= 0)
            lo = std::max(lo, a.lo);
    }
    return {lo, hi};
}

Interval pow(Interval a, Interval b)
{
    std::vector<std::int64_t> c;
    // Undefined inputs (negative exponent, 0**0) yield 0 when totalized.
    if (b.lo < 0 || (a.contains(0) && b.contains(0)))
        c.push_back(0);
    std::int64_t ylo = std::max<std::int64_t>(b.lo, 0);
    if (ylo > b.hi)
        return {c.front(), c.front()};
    std::vector<std::int64_t> xs = {a.lo, a.hi};
    for (std::int64_t special : {-1, 0, 1})
        if (a.contains(special))
            xs.push_back(special);
    bool big_base = a.lo <= -2 || a.hi >= 2;
    constexpr std::int64_t exponent_cap = 64;
    std::int64_t yhi = std::min(b.hi, ylo + exponent_cap);
    for (std::int64_t y = ylo; y <= yhi; ++y) {
        for (std::int64_t x : xs) {
            if (!arith::pow_defined(x, y))
                continue;
            auto p = arith::pow(x, y);
            if (p)
                c.push_back(*p);
            else
                c.push_back(x < 0 && y % 2 == 1 ? int_min : int_max);
        }
    }
    if (b.hi > yhi && big_base) {
        if (a.lo <= -2) {
            c.push_back(int_min);
            c.push_back(int_max);
        }
        else
            c.push_back(int_max);
    }
    if (b.hi > yhi && a.contains(-1)) {
        c.push_back(-1);
        c.push_back(1);
    }
    return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
}

Interval abs(Interval a)
{
    if (a.lo >= 0)
        return a;
    if (a.hi <= 0)
        return neg(a);
    return {0, std::max(clamp(-static_cast<__int128>(a.lo)), a.hi)};
}

Interval min(Interval a, Interval b)
{
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval max(Interval a, Interval b)
{
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

} // namespace eprime::interval
