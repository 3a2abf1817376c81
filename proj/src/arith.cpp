#include "eprime/arith.hpp"

#include <bit>
#include <limits>

namespace eprime::arith {

namespace {
    constexpr std::int64_t lo64 = std::numeric_limits<std::int64_t>::min();
    constexpr std::int64_t hi64 = std::numeric_limits<std::int64_t>::max();

    std::optional<std::int64_t> fit(__int128 v)
    {
        if (v < lo64 || v > hi64)
            return std::nullopt;
        return static_cast<std::int64_t>(v);
    }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    __int128 q = static_cast<__int128>(a) / b;
    if ((static_cast<__int128>(a) % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return clamp(q);
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b)
{
    __int128 r = static_cast<__int128>(a) % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        r += b;
    return static_cast<std::int64_t>(r);
}

std::optional<std::int64_t> add(std::int64_t a, std::int64_t b)
{
    return fit(static_cast<__int128>(a) + b);
}

std::optional<std::int64_t> sub(std::int64_t a, std::int64_t b)
{
    return fit(static_cast<__int128>(a) - b);
}

std::optional<std::int64_t> mul(std::int64_t a, std::int64_t b)
{
    return fit(static_cast<__int128>(a) * b);
}

std::optional<std::int64_t> neg(std::int64_t a)
{
    return fit(-static_cast<__int128>(a));
}

std::optional<std::int64_t> abs(std::int64_t a)
{
    return fit(a < 0 ? -static_cast<__int128>(a) : static_cast<__int128>(a));
}

std::optional<std::int64_t> pow(std::int64_t base, std::int64_t exponent)
{
    if (base == 1)
        return 1;
    if (base == -1)
        return exponent % 2 == 0 ? 1 : -1;
    if (base == 0)
        return 0;
    __int128 acc = 1;
    for (std::int64_t i = 0; i < exponent; ++i) {
        acc *= base;
        if (acc < lo64 || acc > hi64)
            return std::nullopt;
    }
    return static_cast<std::int64_t>(acc);
}

std::int64_t factorial(std::int64_t n)
{
    std::int64_t acc = 1;
    for (std::int64_t i = 2; i <= n; ++i)
        acc *= i;
    return acc;
}

std::int64_t popcount(std::int64_t x)
{
    return std::popcount(static_cast<std::uint64_t>(x));
}

std::int64_t clamp(__int128 v)
{
    if (v < lo64)
        return lo64;
    if (v > hi64)
        return hi64;
    return static_cast<std::int64_t>(v);
}

} // namespace eprime::arith
