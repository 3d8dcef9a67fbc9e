#include "segeval/legacy_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace segeval {

double harmonic_f1(double precision, double recall) {
    const double sum = precision + recall;
    if (sum <= 0.0) return 0.0;
    return 2.0 * precision * recall / sum;
}

ThresholdMetrics threshold_precision_recall(const CostMatrix& cost, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("tau must lie in (0,1)");
    }
    ThresholdMetrics out;
    out.tau = tau;
    if (cost.cols == 0) {
        return out;  // no proposals: everything stays 0
    }
    std::size_t proposals_hit = 0;
    for (std::size_t j = 0; j < cost.cols; ++j) {
        for (std::size_t i = 0; i < cost.rows; ++i) {
            if (cost.at(i, j) > tau) {
                ++proposals_hit;
                break;
            }
        }
    }
    std::size_t gt_hit = 0;
    for (std::size_t i = 0; i < cost.rows; ++i) {
        for (std::size_t j = 0; j < cost.cols; ++j) {
            if (cost.at(i, j) > tau) {
                ++gt_hit;
                break;
            }
        }
    }
    out.precision = static_cast<double>(proposals_hit) / static_cast<double>(cost.cols);
    out.recall = static_cast<double>(gt_hit) / static_cast<double>(cost.rows);
    out.f1 = harmonic_f1(out.precision, out.recall);
    return out;
}

double mean_iou(const CostMatrix& cost) {
    if (cost.rows == 0) {
        throw std::invalid_argument("mean_iou requires at least one ground-truth row");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < cost.rows; ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < cost.cols; ++j) {
            best = std::max(best, cost.at(i, j));
        }
        sum += best;
    }
    return sum / static_cast<double>(cost.rows);
}

double mean_jaccard(const VideoAnnotation& gt, const VideoAnnotation& pred) {
    return mean_iou(build_cost_matrix(gt, pred));
}

double aggregate_miou(const std::vector<VideoOverlapStats>& per_video) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& v : per_video) {
        sum += v.row_max_sum;
        count += v.gt_count;
    }
    if (count == 0) {
        throw std::invalid_argument("aggregate_miou over zero ground-truth segments");
    }
    return sum / static_cast<double>(count);
}

double aggregate_mjaccard(const std::vector<double>& per_video_means) {
    if (per_video_means.empty()) {
        throw std::invalid_argument("aggregate_mjaccard over zero videos");
    }
    double sum = 0.0;
    for (double v : per_video_means) sum += v;
    return sum / static_cast<double>(per_video_means.size());
}

}  // namespace segeval
