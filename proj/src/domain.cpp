#include "eprime/domain.hpp"

#include "eprime/error.hpp"

#include <algorithm>

namespace eprime {

namespace {
    std::vector<Range> merge(std::vector<Range> rs)
    {
        std::erase_if(rs, [](const Range& r) { return r.lo > r.hi; });
        std::sort(rs.begin(), rs.end(), [](const Range& a, const Range& b) { return a.lo < b.lo; });
        std::vector<Range> out;
        for (const Range& r : rs) {
            if (!out.empty() && (out.back().hi == int_max || r.lo <= out.back().hi + 1))
                out.back().hi = std::max(out.back().hi, r.hi);
            else
                out.push_back(r);
        }
        return out;
    }
}

IntDomain IntDomain::from_ranges(std::vector<Range> ranges)
{
    IntDomain d;
    d.ranges_ = merge(std::move(ranges));
    return d;
}

IntDomain IntDomain::from_values(std::vector<std::int64_t> values)
{
    std::vector<Range> rs;
    rs.reserve(values.size());
    for (auto v : values)
        rs.push_back({v, v});
    return from_ranges(std::move(rs));
}

IntDomain IntDomain::half_open(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi)
{
    IntDomain d = from_ranges({{lo.value_or(int_min), hi.value_or(int_max)}});
    d.open_lo_ = !lo.has_value() && !d.empty();
    d.open_hi_ = !hi.has_value() && !d.empty();
    return d;
}

IntDomain IntDomain::join(const std::vector<IntDomain>& parts)
{
    IntDomain out;
    for (const auto& p : parts)
        out = out.unite(p);
    return out;
}

void IntDomain::normalize_flags()
{
    open_lo_ = open_lo_ && !ranges_.empty() && ranges_.front().lo == int_min;
    open_hi_ = open_hi_ && !ranges_.empty() && ranges_.back().hi == int_max;
}

bool IntDomain::contains(std::int64_t v) const
{
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), v,
        [](std::int64_t x, const Range& r) { return x < r.lo; });
    if (it == ranges_.begin())
        return false;
    --it;
    return v <= it->hi;
}

std::uint64_t IntDomain::size() const
{
    if (!finite())
        fail(ErrorKind::Expand, {}, "cannot count the values of open domain " + str());
    std::uint64_t n = 0;
    for (const Range& r : ranges_) {
        auto width = static_cast<std::uint64_t>(r.hi) - static_cast<std::uint64_t>(r.lo);
        if (width == std::numeric_limits<std::uint64_t>::max() || n + width + 1 < n)
            fail(ErrorKind::Expand, {}, "domain size exceeds 64 bits");
        n += width + 1;
    }
    return n;
}

std::optional<std::uint64_t> IntDomain::rank(std::int64_t v) const
{
    std::uint64_t before = 0;
    for (const Range& r : ranges_) {
        if (v < r.lo)
            return std::nullopt;
        if (v <= r.hi)
            return before + (static_cast<std::uint64_t>(v) - static_cast<std::uint64_t>(r.lo));
        before += static_cast<std::uint64_t>(r.hi) - static_cast<std::uint64_t>(r.lo) + 1;
    }
    return std::nullopt;
}

std::int64_t IntDomain::nth(std::uint64_t k) const
{
    for (const Range& r : ranges_) {
        auto width = static_cast<std::uint64_t>(r.hi) - static_cast<std::uint64_t>(r.lo) + 1;
        if (k < width)
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(r.lo) + k);
        k -= width;
    }
    fail(ErrorKind::Internal, {}, "domain position out of range");
}

std::vector<std::int64_t> IntDomain::values() const
{
    std::vector<std::int64_t> out;
    out.reserve(size());
    for (const Range& r : ranges_)
        for (std::int64_t v = r.lo;; ++v) {
            out.push_back(v);
            if (v == r.hi)
                break;
        }
    return out;
}

IntDomain IntDomain::prefix(std::uint64_t count) const
{
    std::vector<Range> out;
    for (const Range& r : ranges_) {
        if (count == 0)
            break;
        auto width = static_cast<std::uint64_t>(r.hi) - static_cast<std::uint64_t>(r.lo) + 1;
        if (width == 0 || count < width) {
            out.push_back({r.lo, static_cast<std::int64_t>(static_cast<std::uint64_t>(r.lo) + count - 1)});
            count = 0;
        }
        else {
            out.push_back(r);
            count -= width;
        }
    }
    if (count != 0)
        fail(ErrorKind::Expand, {}, "index domain " + str() + " has too few values");
    return from_ranges(std::move(out));
}

IntDomain IntDomain::unite(const IntDomain& other) const
{
    std::vector<Range> rs = ranges_;
    rs.insert(rs.end(), other.ranges_.begin(), other.ranges_.end());
    IntDomain d = from_ranges(std::move(rs));
    d.open_lo_ = open_lo_ || other.open_lo_;
    d.open_hi_ = open_hi_ || other.open_hi_;
    d.normalize_flags();
    return d;
}

IntDomain IntDomain::intersect(const IntDomain& other) const
{
    std::vector<Range> out;
    std::size_t i = 0, j = 0;
    while (i < ranges_.size() && j < other.ranges_.size()) {
        const Range& a = ranges_[i];
        const Range& b = other.ranges_[j];
        std::int64_t lo = std::max(a.lo, b.lo);
        std::int64_t hi = std::min(a.hi, b.hi);
        if (lo <= hi)
            out.push_back({lo, hi});
        if (a.hi < b.hi)
            ++i;
        else
            ++j;
    }
    IntDomain d = from_ranges(std::move(out));
    d.open_lo_ = open_lo_ && other.open_lo_;
    d.open_hi_ = open_hi_ && other.open_hi_;
    d.normalize_flags();
    return d;
}

IntDomain IntDomain::subtract(const IntDomain& other) const
{
    std::vector<Range> out;
    for (Range r : ranges_) {
        std::int64_t lo = r.lo;
        bool alive = true;
        for (const Range& b : other.ranges_) {
            if (b.hi < lo || b.lo > r.hi)
                continue;
            if (b.lo > lo)
                out.push_back({lo, b.lo - 1});
            if (b.hi >= r.hi) {
                alive = false;
                break;
            }
            lo = b.hi + 1;
        }
        if (alive)
            out.push_back({lo, r.hi});
    }
    IntDomain d = from_ranges(std::move(out));
    d.open_lo_ = open_lo_ && !other.open_lo_;
    d.open_hi_ = open_hi_ && !other.open_hi_;
    d.normalize_flags();
    return d;
}

std::string IntDomain::str() const
{
    if (open_lo_ && open_hi_ && ranges_.size() == 1)
        return "int";
    std::string out = "int(";
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        const Range& r = ranges_[i];
        if (i > 0)
            out += ",";
        bool lo_open = i == 0 && open_lo_;
        bool hi_open = i + 1 == ranges_.size() && open_hi_;
        if (r.lo == r.hi && !lo_open && !hi_open)
            out += std::to_string(r.lo);
        else {
            if (!lo_open)
                out += std::to_string(r.lo);
            out += "..";
            if (!hi_open)
                out += std::to_string(r.hi);
        }
    }
    return out + ")";
}

IntDomain normalize_int_domain(std::vector<Range> ranges)
{
    return IntDomain::from_ranges(std::move(ranges));
}

IntDomain domain_binop(DomainSetOp op, const IntDomain& a, const IntDomain& b)
{
    switch (op) {
    case DomainSetOp::Union: return a.unite(b);
    case DomainSetOp::Intersect: return a.intersect(b);
    case DomainSetOp::Minus: return a.subtract(b);
    }
    return a;
}

Domain Domain::boolean()
{
    return Domain{};
}

Domain Domain::integer(IntDomain d)
{
    Domain out;
    out.kind_ = Kind::Int;
    out.ints_ = std::move(d);
    return out;
}

Domain Domain::matrix(std::vector<Domain> index, Domain base)
{
    Domain out;
    out.kind_ = Kind::Matrix;
    out.index_ = std::move(index);
    out.base_ = std::make_shared<const Domain>(std::move(base));
    return out;
}

Domain Domain::contiguous(std::uint64_t n)
{
    if (n == 0)
        return integer(IntDomain::interval(1, 0));
    return integer(IntDomain::interval(1, static_cast<std::int64_t>(n)));
}

IntDomain Domain::as_int_set() const
{
    if (is_bool())
        return IntDomain::interval(0, 1);
    if (is_int())
        return ints_;
    fail(ErrorKind::Type, {}, "matrix domain used where an atomic domain is required");
}

bool Domain::finite() const
{
    switch (kind_) {
    case Kind::Bool: return true;
    case Kind::Int: return ints_.finite();
    case Kind::Matrix:
        return base_->finite()
            && std::all_of(index_.begin(), index_.end(), [](const Domain& d) { return d.finite(); });
    }
    return false;
}

bool Domain::empty() const
{
    switch (kind_) {
    case Kind::Bool: return false;
    case Kind::Int: return ints_.empty();
    case Kind::Matrix: {
        bool no_cells = std::any_of(index_.begin(), index_.end(), [](const Domain& d) { return d.empty(); });
        return !no_cells && base_->empty();
    }
    }
    return false;
}

std::uint64_t Domain::atomic_size() const
{
    if (is_bool())
        return 2;
    if (is_int())
        return ints_.size();
    fail(ErrorKind::Internal, {}, "atomic_size of a matrix domain");
}

std::optional<std::uint64_t> Domain::position(std::int64_t key) const
{
    if (is_bool()) {
        if (key == 0 || key == 1)
            return static_cast<std::uint64_t>(key);
        return std::nullopt;
    }
    return ints_.rank(key);
}

std::int64_t Domain::key_at(std::uint64_t k) const
{
    if (is_bool())
        return static_cast<std::int64_t>(k);
    return ints_.nth(k);
}

std::string Domain::str() const
{
    switch (kind_) {
    case Kind::Bool: return "bool";
    case Kind::Int: return ints_.str();
    case Kind::Matrix: {
        std::string out = "matrix indexed by [";
        for (std::size_t i = 0; i < index_.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += index_[i].str();
        }
        return out + "] of " + base_->str();
    }
    }
    return "?";
}

bool operator==(const Domain& a, const Domain& b)
{
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case Domain::Kind::Bool: return true;
    case Domain::Kind::Int: return a.ints_ == b.ints_;
    case Domain::Kind::Matrix: return a.index_ == b.index_ && *a.base_ == *b.base_;
    }
    return false;
}

std::uint64_t domain_cardinality(const Domain& d)
{
    if (!d.finite())
        fail(ErrorKind::Expand, {}, "cannot enumerate open domain " + d.str());
    if (!d.is_matrix())
        return d.atomic_size();
    std::uint64_t cells = 1;
    for (const Domain& ix : d.index()) {
        std::uint64_t n = ix.atomic_size();
        if (n != 0 && cells > std::numeric_limits<std::uint64_t>::max() / n)
            fail(ErrorKind::Expand, {}, "matrix domain cardinality exceeds 64 bits");
        cells *= n;
    }
    std::uint64_t base = d.base().atomic_size();
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < cells; ++i) {
        if (base == 0)
            return 0;
        if (total > static_cast<std::uint64_t>(int_max) / base)
            fail(ErrorKind::Expand, {}, "matrix domain cardinality exceeds 64 bits");
        total *= base;
    }
    return total;
}

} // namespace eprime
