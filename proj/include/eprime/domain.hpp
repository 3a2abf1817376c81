#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eprime {

inline constexpr std::int64_t int_min = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t int_max = std::numeric_limits<std::int64_t>::max();

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    friend bool operator==(const Range&, const Range&) = default;
};

/// A set of integers as sorted, disjoint, non-adjacent inclusive ranges.
/// Open ends are stored as the 64-bit extremes with the matching flag set.
class IntDomain {
public:
    IntDomain() = default;

    /// Normalizes arbitrary ranges; out-of-order ranges contribute nothing.
    static IntDomain from_ranges(std::vector<Range> ranges);
    static IntDomain from_values(std::vector<std::int64_t> values);
    static IntDomain interval(std::int64_t lo, std::int64_t hi) { return from_ranges({{lo, hi}}); }
    static IntDomain unbounded() { return half_open(std::nullopt, std::nullopt); }
    static IntDomain half_open(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi);

    /// Union of normalized pieces that may themselves be open.
    static IntDomain join(const std::vector<IntDomain>& parts);

    [[nodiscard]] const std::vector<Range>& ranges() const { return ranges_; }
    [[nodiscard]] bool open_below() const { return open_lo_; }
    [[nodiscard]] bool open_above() const { return open_hi_; }
    [[nodiscard]] bool finite() const { return !open_lo_ && !open_hi_; }
    [[nodiscard]] bool empty() const { return ranges_.empty(); }
    [[nodiscard]] bool contains(std::int64_t v) const;

    /// Number of values; throws when the domain is open or the count overflows.
    [[nodiscard]] std::uint64_t size() const;
    [[nodiscard]] std::int64_t min() const { return ranges_.front().lo; }
    [[nodiscard]] std::int64_t max() const { return ranges_.back().hi; }

    /// Zero-based position of v in ascending order, if present.
    [[nodiscard]] std::optional<std::uint64_t> rank(std::int64_t v) const;
    [[nodiscard]] std::int64_t nth(std::uint64_t k) const;
    [[nodiscard]] std::vector<std::int64_t> values() const;

    /// The first `count` values, as a finite domain.
    [[nodiscard]] IntDomain prefix(std::uint64_t count) const;

    [[nodiscard]] IntDomain unite(const IntDomain& other) const;
    [[nodiscard]] IntDomain intersect(const IntDomain& other) const;
    [[nodiscard]] IntDomain subtract(const IntDomain& other) const;

    /// `int(1..3,5)` style rendering.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const IntDomain&, const IntDomain&) = default;

private:
    std::vector<Range> ranges_;
    bool open_lo_ = false;
    bool open_hi_ = false;

    void normalize_flags();
};

enum class DomainSetOp { Union, Intersect, Minus };

[[nodiscard]] IntDomain normalize_int_domain(std::vector<Range> ranges);
[[nodiscard]] IntDomain domain_binop(DomainSetOp op, const IntDomain& a, const IntDomain& b);

/// A ground domain: bool, a (possibly open) integer domain, or a matrix domain
/// whose index domains are bool or finite integer domains.
class Domain {
public:
    enum class Kind { Bool, Int, Matrix };

    Domain() = default;
    static Domain boolean();
    static Domain integer(IntDomain d);
    static Domain matrix(std::vector<Domain> index, Domain base);
    /// int(1..n)
    static Domain contiguous(std::uint64_t n);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_bool() const { return kind_ == Kind::Bool; }
    [[nodiscard]] bool is_int() const { return kind_ == Kind::Int; }
    [[nodiscard]] bool is_matrix() const { return kind_ == Kind::Matrix; }

    [[nodiscard]] const IntDomain& ints() const { return ints_; }
    [[nodiscard]] const std::vector<Domain>& index() const { return index_; }
    [[nodiscard]] const Domain& base() const { return *base_; }

    /// Atomic domains viewed as integer sets (bool is {0,1}).
    [[nodiscard]] IntDomain as_int_set() const;

    [[nodiscard]] bool finite() const;
    [[nodiscard]] bool empty() const;

    /// Number of values of an atomic domain, or index length of an index domain.
    [[nodiscard]] std::uint64_t atomic_size() const;
    /// Position of an (int or 0/1) scalar key inside an atomic domain.
    [[nodiscard]] std::optional<std::uint64_t> position(std::int64_t key) const;
    /// Key at position k of an atomic domain.
    [[nodiscard]] std::int64_t key_at(std::uint64_t k) const;

    [[nodiscard]] std::string str() const;

    friend bool operator==(const Domain& a, const Domain& b);

private:
    Kind kind_ = Kind::Bool;
    IntDomain ints_;
    std::vector<Domain> index_;
    std::shared_ptr<const Domain> base_;
};

/// |enumerate(d)|; throws on open domains and 64-bit overflow.
[[nodiscard]] std::uint64_t domain_cardinality(const Domain& d);

} // namespace eprime
