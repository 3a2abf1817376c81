#pragma once

#include <cstdint>
#include <optional>

namespace eprime::arith {

/// Floor division and the matching modulo, a - b*floor(a/b). Require b != 0.
[[nodiscard]] std::int64_t floor_div(std::int64_t a, std::int64_t b);
[[nodiscard]] std::int64_t floor_mod(std::int64_t a, std::int64_t b);

// Checked 64-bit operations; nullopt on overflow.
[[nodiscard]] std::optional<std::int64_t> add(std::int64_t a, std::int64_t b);
[[nodiscard]] std::optional<std::int64_t> sub(std::int64_t a, std::int64_t b);
[[nodiscard]] std::optional<std::int64_t> mul(std::int64_t a, std::int64_t b);
[[nodiscard]] std::optional<std::int64_t> neg(std::int64_t a);
[[nodiscard]] std::optional<std::int64_t> abs(std::int64_t a);
/// Requires exponent >= 0 and not 0**0.
[[nodiscard]] std::optional<std::int64_t> pow(std::int64_t base, std::int64_t exponent);
/// Requires 0 <= n <= 20.
[[nodiscard]] std::int64_t factorial(std::int64_t n);
[[nodiscard]] std::int64_t popcount(std::int64_t x);

[[nodiscard]] inline bool pow_defined(std::int64_t x, std::int64_t y) { return (x != 0 || y != 0) && y >= 0; }
[[nodiscard]] inline bool factorial_defined(std::int64_t x) { return x >= 0 && x <= 20; }

/// Saturate a 128-bit intermediate to the 64-bit range.
[[nodiscard]] std::int64_t clamp(__int128 v);

} // namespace eprime::arith
