#pragma once

#include <span>
#include <vector>

#include "dataset.hpp"
#include "tree.hpp"

namespace mosr {

// Evaluates the tree on every row in `rows`.
//
// add/sub/mul/div fold their children left to right; div is unprotected and log is the
// natural logarithm. Domain violations produce inf/nan values which propagate; they are
// values, not errors. A variable index that does not name a column throws StructureError.
auto evaluate(const Tree& tree, const Dataset& data, Range rows) -> std::vector<double>;

// Same as above over bare input columns.
auto evaluate(const Tree& tree, std::span<const std::vector<double>> columns, Range rows) -> std::vector<double>;

} // namespace mosr
