#pragma once

#include <vector>

#include "mergemix/domain.hpp"

namespace mergemix {

struct MABounds {
    Eigen::Index lower = 0;  ///< one transaction per input
    Eigen::Index upper = 0;  ///< complete bipartite split
};

/// Indices into SingleTargetInstance::values, ascending.
using IndexSet = std::vector<int>;

/// Minimum-cardinality cover of the target: take values in decreasing order
/// (equal values by lower index) until the running sum reaches the target.
/// Throws Error(Infeasible) if all values together fall short.
IndexSet solve_single_target(const SingleTargetInstance& inst);

/// Exhaustive oracle for solve_single_target. Subsets are visited by
/// cardinality, then lexicographically. Throws Infeasible, or TooLarge past
/// 20 values.
IndexSet brute_single_target(const SingleTargetInstance& inst);

MABounds bounds(const MAInstance& inst);

struct ExactLimits {
    /// Largest inputs x outputs cell count the exact search accepts.
    Eigen::Index max_cells = 64;
};

/// Minimum number of transactions (strictly positive cells) over all
/// non-negative integer splits. Depth-first branch and bound over cells in
/// row-major order, seeded with the northwest-corner split as incumbent.
/// Throws Unbalanced / NonPositiveValue for invalid instances and TooLarge
/// past the cell limit.
MASolution solve_multi_target_exact(const MAInstance& inst, ExactLimits limits = {});

/// Northwest-corner split: O(l*r), at most l + r - 1 transactions. Not optimal.
MASolution heuristic_multi_target(const MAInstance& inst);

/// Inputs are the elements, two outputs of half the total each.
/// Throws OddSum, or NonPositiveValue for empty or non-positive elements.
MAInstance partition_to_ma(const PartitionInstance& p);

/// Subset-sum DP over half the total.
bool has_partition(const PartitionInstance& p);

}  // namespace mergemix
