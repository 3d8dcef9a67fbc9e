#include "segeval/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace segeval {

DatasetStats compute_dataset_stats(const std::vector<VideoAnnotation>& train) {
    if (train.empty()) {
        throw std::invalid_argument("dataset statistics over an empty training set");
    }
    double total_duration = 0.0;
    std::size_t total_segments = 0;
    for (const auto& video : train) {
        for (const auto& seg : video.segments) total_duration += seg.length();
        total_segments += video.segments.size();
    }
    if (total_segments == 0) {
        throw std::invalid_argument("training set has no segments");
    }
    DatasetStats stats;
    const double mean_count =
        static_cast<double>(total_segments) / static_cast<double>(train.size());
    stats.avg_count = static_cast<int>(std::nearbyint(mean_count));  // half-to-even
    stats.avg_duration = total_duration / static_cast<double>(total_segments);
    return stats;
}

VideoAnnotation generate_uniform(const std::string& video_id, double duration,
                                 const BaselineSpec& spec, std::optional<int> gt_count) {
    if (!(duration > 0.0)) {
        throw std::invalid_argument("uniform baseline requires a positive duration");
    }
    VideoAnnotation out;
    out.video_id = video_id;
    out.duration = duration;

    switch (spec.mode) {
        case BaselineMode::AvgCount:
        case BaselineMode::GtCount: {
            int k = spec.avg_count;
            if (spec.mode == BaselineMode::GtCount) {
                if (!gt_count) {
                    throw std::invalid_argument(
                        "gt-count baseline needs the ground-truth segment count");
                }
                k = *gt_count;
            }
            if (k <= 0) {
                throw std::invalid_argument("segment count must be positive");
            }
            for (int i = 0; i < k; ++i) {
                Segment seg;
                seg.start = duration * static_cast<double>(i) / static_cast<double>(k);
                seg.end = duration * static_cast<double>(i + 1) / static_cast<double>(k);
                out.segments.push_back(seg);
            }
            break;
        }
        case BaselineMode::AvgDuration: {
            const double d = spec.avg_duration;
            if (!(d > 0.0)) {
                throw std::invalid_argument("segment duration must be positive");
            }
            const int k = static_cast<int>(std::ceil(duration / d));
            for (int i = 0; i < k; ++i) {
                Segment seg;
                seg.start = d * static_cast<double>(i);
                seg.end = std::min(duration, d * static_cast<double>(i + 1));
                out.segments.push_back(seg);
            }
            break;
        }
    }
    return out;
}

}  // namespace segeval
