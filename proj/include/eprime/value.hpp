#pragma once

#include "eprime/domain.hpp"
#include "eprime/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eprime {

class Value;
using MatrixValue = MatrixOf<Value>;

/// A ground value: integer, boolean, matrix of scalars, or a set of integers
/// (only produced by toSet and domain operands of `in`).
class Value {
public:
    enum class Kind { Int, Bool, Matrix, Set };

    Value() : data_(std::in_place_index<0>, 0) {}
    static Value integer(std::int64_t v) { return Value(Storage(std::in_place_index<0>, v)); }
    static Value boolean(bool b) { return Value(Storage(std::in_place_index<1>, b)); }
    static Value matrix(MatrixValue m);
    static Value set(IntDomain s);

    [[nodiscard]] Kind kind() const { return static_cast<Kind>(data_.index()); }
    [[nodiscard]] bool is_int() const { return kind() == Kind::Int; }
    [[nodiscard]] bool is_bool() const { return kind() == Kind::Bool; }
    [[nodiscard]] bool is_matrix() const { return kind() == Kind::Matrix; }
    [[nodiscard]] bool is_set() const { return kind() == Kind::Set; }
    [[nodiscard]] bool is_scalar() const { return is_int() || is_bool(); }

    [[nodiscard]] std::int64_t as_int() const { return std::get<0>(data_); }
    [[nodiscard]] bool as_bool() const { return std::get<1>(data_); }
    [[nodiscard]] const MatrixValue& as_matrix() const { return *std::get<2>(data_); }
    [[nodiscard]] const IntDomain& as_set() const { return *std::get<3>(data_); }

    /// Integer view of a scalar; false is 0 and true is 1.
    [[nodiscard]] std::int64_t to_int() const;

    /// Literal syntax with explicit index domains, e.g. `[1, 2 ; int(1..2)]`.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const Value& a, const Value& b);

private:
    using Storage = std::variant<std::int64_t, bool, std::shared_ptr<const MatrixValue>, std::shared_ptr<const IntDomain>>;
    explicit Value(Storage s) : data_(std::move(s)) {}
    Storage data_;
};

/// Total order used for enumeration: integers ascending, false < true, and
/// matrices lexicographically by element sequence.
[[nodiscard]] bool value_less(const Value& a, const Value& b);

/// Scalar or matrix value lies in a domain (matrix index domains must match).
[[nodiscard]] bool domain_contains(const Domain& d, const Value& v);

/// All values of a finite domain in canonical ascending order. Matrix domains
/// are enumerated lexicographically over their element sequence; `cap` limits
/// how many values may be produced.
[[nodiscard]] std::vector<Value> domain_enumerate(const Domain& d, std::uint64_t cap = 1'000'000);

/// Scalar value for a key of an atomic domain (bool domain keys are 0/1).
[[nodiscard]] Value key_value(const Domain& atomic, std::int64_t key);

} // namespace eprime
