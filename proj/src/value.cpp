#include "eprime/value.hpp"

#include <sstream>

namespace eprime {

Value Value::matrix(MatrixValue m)
{
    return Value(Storage(std::in_place_index<2>, std::make_shared<const MatrixValue>(std::move(m))));
}

Value Value::set(IntDomain s)
{
    return Value(Storage(std::in_place_index<3>, std::make_shared<const IntDomain>(std::move(s))));
}

std::int64_t Value::to_int() const
{
    if (is_bool())
        return as_bool() ? 1 : 0;
    if (is_int())
        return as_int();
    fail(ErrorKind::Type, {}, "matrix or set value used as a scalar");
}

namespace {
    void print_matrix(std::ostream& os, const MatrixValue& m, std::size_t dim, std::size_t& at)
    {
        const Domain& ix = m.index[dim];
        std::uint64_t n = ix.atomic_size();
        os << "[";
        for (std::uint64_t i = 0; i < n; ++i) {
            if (i > 0)
                os << ", ";
            if (dim + 1 == m.dims())
                os << m.elems[at++].str();
            else
                print_matrix(os, m, dim + 1, at);
        }
        os << (n == 0 ? "; " : " ; ") << ix.str() << "]";
    }
}

std::string Value::str() const
{
    switch (kind()) {
    case Kind::Int: return std::to_string(as_int());
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Set: return as_set().str();
    case Kind::Matrix: {
        std::ostringstream os;
        std::size_t at = 0;
        const auto& m = as_matrix();
        if (m.dims() == 0)
            return "[]";
        print_matrix(os, m, 0, at);
        return os.str();
    }
    }
    return "?";
}

bool operator==(const Value& a, const Value& b)
{
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case Value::Kind::Int: return a.as_int() == b.as_int();
    case Value::Kind::Bool: return a.as_bool() == b.as_bool();
    case Value::Kind::Set: return a.as_set() == b.as_set();
    case Value::Kind::Matrix: return a.as_matrix().index == b.as_matrix().index && a.as_matrix().elems == b.as_matrix().elems;
    }
    return false;
}

bool value_less(const Value& a, const Value& b)
{
    if (a.is_scalar() && b.is_scalar())
        return a.to_int() < b.to_int();
    if (a.is_matrix() && b.is_matrix()) {
        const auto& x = a.as_matrix().elems;
        const auto& y = b.as_matrix().elems;
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), value_less);
    }
    fail(ErrorKind::Internal, {}, "comparing values of different kinds");
}

bool domain_contains(const Domain& d, const Value& v)
{
    switch (d.kind()) {
    case Domain::Kind::Bool: return v.is_bool();
    case Domain::Kind::Int: return v.is_int() && d.ints().contains(v.as_int());
    case Domain::Kind::Matrix: {
        if (!v.is_matrix())
            return false;
        const auto& m = v.as_matrix();
        if (!(m.index == d.index()))
            return false;
        for (const auto& e : m.elems)
            if (!domain_contains(d.base(), e))
                return false;
        return true;
    }
    }
    return false;
}

Value key_value(const Domain& atomic, std::int64_t key)
{
    return atomic.is_bool() ? Value::boolean(key != 0) : Value::integer(key);
}

std::vector<Value> domain_enumerate(const Domain& d, std::uint64_t cap)
{
    if (!d.finite())
        fail(ErrorKind::Expand, {}, "cannot enumerate open domain " + d.str());
    std::vector<Value> out;
    if (!d.is_matrix()) {
        std::uint64_t n = d.atomic_size();
        if (n > cap)
            fail(ErrorKind::Expand, {}, "domain " + d.str() + " has " + std::to_string(n)
                    + " values, over the enumeration limit of " + std::to_string(cap));
        out.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k)
            out.push_back(key_value(d, d.key_at(k)));
        return out;
    }
    std::uint64_t total = domain_cardinality(d);
    if (total > cap)
        fail(ErrorKind::Expand, {}, "matrix domain " + d.str() + " has " + std::to_string(total)
                + " values, over the enumeration limit of " + std::to_string(cap));
    std::size_t cells = MatrixValue::cell_count(d.index());
    std::vector<Value> base = domain_enumerate(d.base(), cap);
    if (base.empty() && cells > 0)
        return out;
    std::vector<std::size_t> digit(cells, 0);
    out.reserve(total);
    for (;;) {
        std::vector<Value> elems;
        elems.reserve(cells);
        for (auto k : digit)
            elems.push_back(base[k]);
        out.push_back(Value::matrix(MatrixValue(d.index(), std::move(elems))));
        std::size_t i = cells;
        bool done = true;
        while (i-- > 0) {
            if (++digit[i] < base.size()) {
                done = false;
                break;
            }
            digit[i] = 0;
        }
        if (done)
            break;
    }
    return out;
}

} // namespace eprime
