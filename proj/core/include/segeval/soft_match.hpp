/**
 * Differentiable relaxation of the ordered matcher.
 *
 * The max-recurrence becomes a min-recurrence on negated IoU, and the hard
 * min is replaced by the log-sum-exp soft minimum
 *
 *   smooth_min_gamma(v) = -gamma * log sum_k exp(-v_k / gamma)
 *
 * which lower-bounds the hard min by at most gamma*ln(k). The forward pass
 * returns the (negated back) soft matched-IoU score; the backward pass
 * propagates the per-cell softmax weights through the DP graph in O(m*n)
 * and yields the exact gradient of the soft score with respect to every
 * IoU entry. Those gradients double as soft alignment weights: entries lie
 * in [0,1] and each row/column carries at most unit mass.
 */
#pragma once

#include <span>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

/// Log-sum-exp soft minimum, max-shifted for stability. Requires a
/// nonempty list and gamma > 0 (std::invalid_argument otherwise).
double smooth_min(std::span<const double> values, double gamma);

/// Soft analogue of the ordered matcher's optimal score. Converges to the
/// hard score as gamma -> 0 (within gamma*(m+n)*ln 3).
double soft_forward(const CostMatrix& cost, double gamma);

struct SoftMatchResult {
    double soft_score = 0.0;
    CostMatrix grad_cost;   // d soft_score / d cost(i,j)
    CostMatrix alignment;   // identical to grad_cost; kept under both names
    double gamma = 0.0;
};

/// Forward plus reverse-mode sweep over the DP graph.
SoftMatchResult soft_backward(const CostMatrix& cost, double gamma);

/// One-sided partial derivatives of iou(gt, pred) with respect to the
/// predicted boundaries. Zero in the flat region where the segments are
/// disjoint; at a boundary coincidence the derivative of the adjacent
/// linear piece is used.
struct BoundaryGrad {
    double d_start = 0.0;
    double d_end = 0.0;
};
BoundaryGrad iou_boundary_grad(const Segment& gt, const Segment& pred);

/// Matching loss m - soft_score (0 for a perfect prediction as gamma -> 0)
/// with gradients chained to the prediction boundaries. Predictions are
/// temporally sorted internally; gradients come back in caller order.
struct SoftLossResult {
    double loss = 0.0;
    double soft_score = 0.0;
    std::vector<BoundaryGrad> boundary_grad;  // d loss / d (start_j, end_j)
};
SoftLossResult soft_match_loss(const VideoAnnotation& gt, const std::vector<Segment>& predictions,
                               double gamma);

}  // namespace segeval
