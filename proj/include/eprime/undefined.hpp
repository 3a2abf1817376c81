#pragma once

#include "eprime/ast.hpp"

#include <vector>

namespace eprime {

struct GuardResult {
    ExprPtr expr;
    /// Definedness conditions with no boolean ancestor (the expression was
    /// not boolean); callers post them as extra top-level constraints.
    std::vector<ExprPtr> pending;
};

/// Makes every partial operation total and conjoins its definedness
/// condition onto the closest enclosing boolean expression. Conditions from
/// inside a sum or comprehension body are lifted as a forAll over its
/// variables. Input and output are typed trees.
[[nodiscard]] GuardResult guard_undefinedness(const ExprPtr& e);

} // namespace eprime
