#pragma once

#include "eprime/domain.hpp"
#include "eprime/error.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eprime {

/// Dense row-major matrix over arbitrary index domains. Used for ground values
/// and for matrices of solver terms alike; index keys are int64 (bool as 0/1).
template <class T>
struct MatrixOf {
    std::vector<Domain> index;
    std::vector<T> elems;

    MatrixOf() = default;
    MatrixOf(std::vector<Domain> ix, std::vector<T> xs) : index(std::move(ix)), elems(std::move(xs))
    {
        if (elems.size() != cell_count(index))
            fail(ErrorKind::Internal, {}, "matrix element count does not match its index domains");
    }

    [[nodiscard]] std::size_t dims() const { return index.size(); }
    [[nodiscard]] std::size_t size() const { return elems.size(); }

    [[nodiscard]] static std::size_t cell_count(const std::vector<Domain>& ix)
    {
        std::size_t n = 1;
        for (const auto& d : ix)
            n *= static_cast<std::size_t>(d.atomic_size());
        return n;
    }

    [[nodiscard]] std::vector<std::size_t> extents() const
    {
        std::vector<std::size_t> out;
        for (const auto& d : index)
            out.push_back(static_cast<std::size_t>(d.atomic_size()));
        return out;
    }

    /// Row-major offset of a full index key, or nullopt when out of bounds.
    [[nodiscard]] std::optional<std::size_t> offset(std::span<const std::int64_t> key) const
    {
        if (key.size() != index.size())
            fail(ErrorKind::Type, {}, "matrix has " + std::to_string(index.size()) + " dimensions but "
                    + std::to_string(key.size()) + " indices were given");
        std::size_t off = 0;
        for (std::size_t d = 0; d < key.size(); ++d) {
            auto p = index[d].position(key[d]);
            if (!p)
                return std::nullopt;
            off = off * static_cast<std::size_t>(index[d].atomic_size()) + static_cast<std::size_t>(*p);
        }
        return off;
    }

    [[nodiscard]] const T* at(std::span<const std::int64_t> key) const
    {
        auto off = offset(key);
        return off ? &elems[*off] : nullptr;
    }

    /// Keeps the dimensions marked nullopt, fixing the others; the result is
    /// indexed contiguously from 1. nullopt when a fixed key is out of bounds.
    [[nodiscard]] std::optional<MatrixOf> slice(std::span<const std::optional<std::int64_t>> spec) const
    {
        if (spec.size() != index.size())
            fail(ErrorKind::Type, {}, "slice has " + std::to_string(spec.size()) + " positions for a "
                    + std::to_string(index.size()) + "-dimensional matrix");
        std::vector<std::size_t> fixed(spec.size(), 0);
        std::vector<Domain> out_index;
        for (std::size_t d = 0; d < spec.size(); ++d) {
            if (spec[d]) {
                auto p = index[d].position(*spec[d]);
                if (!p)
                    return std::nullopt;
                fixed[d] = static_cast<std::size_t>(*p);
            }
            else
                out_index.push_back(Domain::contiguous(index[d].atomic_size()));
        }
        auto ext = extents();
        std::vector<T> out;
        std::vector<std::size_t> pos(spec.size(), 0);
        for (std::size_t d = 0; d < spec.size(); ++d)
            pos[d] = spec[d] ? fixed[d] : 0;
        bool any_empty = false;
        for (std::size_t d = 0; d < spec.size(); ++d)
            if (!spec[d] && ext[d] == 0)
                any_empty = true;
        if (!any_empty) {
            for (;;) {
                std::size_t off = 0;
                for (std::size_t d = 0; d < spec.size(); ++d)
                    off = off * ext[d] + pos[d];
                out.push_back(elems[off]);
                // odometer over the free dimensions, last fastest
                std::size_t d = spec.size();
                bool done = true;
                while (d-- > 0) {
                    if (spec[d])
                        continue;
                    if (++pos[d] < ext[d]) {
                        done = false;
                        break;
                    }
                    pos[d] = 0;
                }
                if (done)
                    break;
            }
        }
        return MatrixOf(std::move(out_index), std::move(out));
    }

    /// Merges the first n+1 dimensions into one indexed from 1.
    [[nodiscard]] MatrixOf flatten(std::size_t n) const
    {
        if (n + 1 > index.size())
            fail(ErrorKind::Expand, {}, "flatten(" + std::to_string(n) + ", X) needs at least "
                    + std::to_string(n + 1) + " dimensions but X has " + std::to_string(index.size()));
        if (n == 0)
            return *this;
        std::uint64_t merged = 1;
        for (std::size_t d = 0; d <= n; ++d)
            merged *= index[d].atomic_size();
        std::vector<Domain> ix{Domain::contiguous(merged)};
        ix.insert(ix.end(), index.begin() + static_cast<std::ptrdiff_t>(n) + 1, index.end());
        return MatrixOf(std::move(ix), elems);
    }

    [[nodiscard]] MatrixOf flatten_all() const
    {
        return MatrixOf({Domain::contiguous(elems.size())}, elems);
    }

    /// New outer dimension over equally shaped sub-matrices.
    static MatrixOf stack(Domain outer, const std::vector<MatrixOf>& rows, std::vector<Domain> inner_if_empty = {})
    {
        std::vector<Domain> inner = rows.empty() ? std::move(inner_if_empty) : rows.front().index;
        std::vector<T> out;
        for (const auto& r : rows) {
            if (!(r.index == inner))
                fail(ErrorKind::Expand, {}, "irregular matrix: rows have different index domains");
            out.insert(out.end(), r.elems.begin(), r.elems.end());
        }
        std::vector<Domain> ix{std::move(outer)};
        ix.insert(ix.end(), inner.begin(), inner.end());
        return MatrixOf(std::move(ix), std::move(out));
    }

    /// Same contents under different index domains of equal extents.
    [[nodiscard]] MatrixOf reindexed(std::vector<Domain> ix) const
    {
        if (ix.size() != index.size())
            fail(ErrorKind::Type, {}, "reindexing changes the number of dimensions");
        for (std::size_t d = 0; d < ix.size(); ++d)
            if (ix[d].atomic_size() != index[d].atomic_size())
                fail(ErrorKind::Instance, {}, "index domain " + ix[d].str() + " does not match matrix extent "
                        + std::to_string(index[d].atomic_size()));
        return MatrixOf(std::move(ix), elems);
    }

    /// Row k (zero-based) of the outermost dimension.
    [[nodiscard]] MatrixOf row(std::size_t k) const
    {
        std::vector<Domain> inner(index.begin() + 1, index.end());
        std::size_t stride = cell_count(inner);
        std::vector<T> out(elems.begin() + static_cast<std::ptrdiff_t>(k * stride),
            elems.begin() + static_cast<std::ptrdiff_t>((k + 1) * stride));
        return MatrixOf(std::move(inner), std::move(out));
    }
};

} // namespace eprime
