/**
 * Uniform segmentation baselines built from dataset statistics. Any learned
 * segmenter should clear these floors.
 */
#pragma once

#include <optional>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

enum class BaselineMode { AvgCount, AvgDuration, GtCount };

struct BaselineSpec {
    BaselineMode mode = BaselineMode::AvgCount;
    int avg_count = 0;         // AvgCount mode
    double avg_duration = 0.0;  // AvgDuration mode, seconds
};

struct DatasetStats {
    int avg_count = 0;          // rounded (half-to-even) mean segments per video
    double avg_duration = 0.0;  // pooled mean segment duration, seconds
};

/// Throws std::invalid_argument on an empty training set.
DatasetStats compute_dataset_stats(const std::vector<VideoAnnotation>& train);

/// AvgCount/GtCount tile [0, duration] with k equal segments; AvgDuration
/// emits ceil(duration/d) segments of length d with the last one clipped
/// to the video end. GtCount requires gt_count.
VideoAnnotation generate_uniform(const std::string& video_id, double duration,
                                 const BaselineSpec& spec,
                                 std::optional<int> gt_count = std::nullopt);

}  // namespace segeval
