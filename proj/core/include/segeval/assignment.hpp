/**
 * Maximum-weight bipartite assignment (Hungarian / Kuhn-Munkres), the
 * matcher set-prediction losses use. It ignores temporal order entirely,
 * which is exactly the behavior the ordered matcher is compared against.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

struct AssignedPair {
    std::size_t gt_index = 0;
    std::size_t pred_index = 0;
    double iou = 0.0;
};

/// A full-size 1-to-1 assignment: exactly min(m, n) pairs, total maximal
/// over all such assignments, pairs sorted by gt_index.
struct Assignment {
    std::vector<AssignedPair> pairs;
    double total_score = 0.0;
};

/// Maximization via negated-cost minimization; rectangular matrices are
/// padded with the IoU-neutral value 0. Among equal-weight optima the
/// lexicographically smallest pair list is returned.
Assignment hungarian_match(const CostMatrix& cost);

}  // namespace segeval
