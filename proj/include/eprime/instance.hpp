#pragma once

#include "eprime/eval.hpp"
#include "eprime/typecheck.hpp"

#include <optional>
#include <string>

namespace eprime {

struct WhereViolation {
    Pos pos;
    std::string text;
};

/// Binds every `given` from a parameter file and evaluates lettings and find
/// domains in declaration order, then checks the `where` clauses. `params`
/// may be null only when the model has no givens.
[[nodiscard]] Instance bind_parameters(const TypedModel& model, const SourceModel* params,
    std::uint64_t enum_cap = default_enum_cap);

/// Same as bind_parameters but skips the where clauses.
[[nodiscard]] Instance bind_declarations(const TypedModel& model, const SourceModel* params,
    std::uint64_t enum_cap = default_enum_cap);

/// First where clause that is not true; undefined counts as false.
[[nodiscard]] std::optional<WhereViolation> check_where(const TypedModel& model, const Instance& inst);

[[nodiscard]] const Domain& resolve_letting_domain(const std::string& name, const Instance& inst);

} // namespace eprime
