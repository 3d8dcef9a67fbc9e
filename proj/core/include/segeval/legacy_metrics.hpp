/**
 * Detection- and overlap-based segmentation metrics, reproduced as used by
 * prior evaluation pipelines. Both are blind to temporal order and allow a
 * single proposal to serve several ground-truth segments; the ordered
 * matcher exists to fix exactly that, so these stay faithful to the
 * original definitions.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

struct ThresholdMetrics {
    double tau = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Harmonic mean, 0 when both inputs are 0.
double harmonic_f1(double precision, double recall);

/// Detection precision/recall at IoU threshold tau (strictly greater-than).
/// precision = |{p : exists g with IoU(g,p) > tau}| / |P|
/// recall    = |{g : exists p with IoU(g,p) > tau}| / |G|
/// Empty prediction set gives 0/0. Throws std::invalid_argument unless
/// 0 < tau < 1.
ThresholdMetrics threshold_precision_recall(const CostMatrix& cost, double tau);

/// Mean over ground-truth rows of the best (max) IoU in that row.
/// Zero predictions contribute 0 per row.
double mean_iou(const CostMatrix& cost);

/// Per-video Jaccard: same row-max average as mean_iou. The two metrics
/// differ only at dataset level, see the aggregate_* helpers.
double mean_jaccard(const VideoAnnotation& gt, const VideoAnnotation& pred);

/// Dataset mIoU pools every ground-truth segment: sum of per-video row-max
/// sums divided by the total segment count.
struct VideoOverlapStats {
    double row_max_sum = 0.0;
    std::size_t gt_count = 0;
};
double aggregate_miou(const std::vector<VideoOverlapStats>& per_video);

/// Dataset mJaccard averages the per-video means (every video weighs the
/// same regardless of its segment count).
double aggregate_mjaccard(const std::vector<double>& per_video_means);

struct OverlapMetrics {
    double miou = 0.0;
    double mjaccard = 0.0;
};

}  // namespace segeval
