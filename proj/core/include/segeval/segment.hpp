/**
 * Core types for temporal procedure segmentation: segments, per-video
 * annotations and the pairwise-IoU cost matrix everything else consumes.
 *
 * Conventions:
 *   - times are real-valued seconds, segments are closed intervals
 *   - ground-truth segments are sorted and pairwise non-overlapping
 *     (touching boundaries are fine); predictions may overlap and may
 *     arrive unsorted
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace segeval {

struct Segment {
    double start = 0.0;
    double end = 0.0;
    std::optional<std::string> summary;
    std::optional<double> confidence;

    double length() const { return end - start; }
};

struct VideoAnnotation {
    std::string video_id;
    double duration = 0.0;
    std::vector<Segment> segments;
};

/// Interval intersection-over-union. 0 when interiors are disjoint,
/// 1 iff the segments are identical. Symmetric.
double iou(const Segment& a, const Segment& b);

/// Dense |gt| x |pred| grid of pairwise IoU values. Rows follow
/// ground-truth order, columns follow the prediction order as stored.
struct CostMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major

    CostMatrix() = default;
    CostMatrix(std::size_t m, std::size_t n) : rows(m), cols(n), values(m * n, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Entry (i,j) = iou(gt.segments[i], pred.segments[j]). An empty
/// prediction list yields an m x 0 matrix. Throws std::runtime_error
/// ("no reference segments") when gt is empty.
CostMatrix build_cost_matrix(const VideoAnnotation& gt, const VideoAnnotation& pred);

/// Temporal normalization for predictions: stable sort by start,
/// ties by end, then by input index.
std::vector<Segment> normalize_segments(std::vector<Segment> segments);

/// Keep the n highest-confidence segments (missing confidence counts
/// as 0, ties keep input order), then re-sort temporally.
std::vector<Segment> select_top_n(const std::vector<Segment>& segments, std::size_t n);

/// Throws std::runtime_error naming video_id and the offending field when a
/// segment is non-finite, zero-length/inverted, or outside [0, duration].
void validate_annotation(const VideoAnnotation& video);

/// validate_annotation plus the ground-truth-only invariants: segments
/// sorted by start with pairwise disjoint interiors.
void validate_ground_truth(const VideoAnnotation& video);

}  // namespace segeval
