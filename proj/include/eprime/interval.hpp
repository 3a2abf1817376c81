#pragma once

#include "eprime/domain.hpp"

#include <algorithm>
#include <cstdint>

namespace eprime {

/// Closed integer interval with saturating arithmetic. Operations on
/// partial functions follow their totalized form (undefined inputs give 0).
struct Interval {
    std::int64_t lo = int_min;
    std::int64_t hi = int_max;

    static Interval full() { return {}; }
    static Interval point(std::int64_t v) { return {v, v}; }
    static Interval boolean() { return {0, 1}; }

    [[nodiscard]] bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
    [[nodiscard]] bool is_full() const { return lo == int_min && hi == int_max; }
    [[nodiscard]] bool saturated() const { return lo == int_min || hi == int_max; }
    [[nodiscard]] Interval hull(const Interval& o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

namespace interval {
    [[nodiscard]] Interval add(Interval a, Interval b);
    [[nodiscard]] Interval sub(Interval a, Interval b);
    [[nodiscard]] Interval neg(Interval a);
    [[nodiscard]] Interval mul(Interval a, Interval b);
    [[nodiscard]] Interval div(Interval a, Interval b);
    [[nodiscard]] Interval mod(Interval a, Interval b);
    [[nodiscard]] Interval pow(Interval a, Interval b);
    [[nodiscard]] Interval abs(Interval a);
    [[nodiscard]] Interval min(Interval a, Interval b);
    [[nodiscard]] Interval max(Interval a, Interval b);
}

} // namespace eprime
