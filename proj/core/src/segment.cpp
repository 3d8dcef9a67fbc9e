#include "segeval/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace segeval {

double iou(const Segment& a, const Segment& b) {
    const double inter = std::min(a.end, b.end) - std::max(a.start, b.start);
    if (inter <= 0.0) return 0.0;
    const double uni = a.length() + b.length() - inter;
    return inter / uni;
}

CostMatrix build_cost_matrix(const VideoAnnotation& gt, const VideoAnnotation& pred) {
    if (gt.segments.empty()) {
        throw std::runtime_error("no reference segments for video '" + gt.video_id + "'");
    }
    CostMatrix cost(gt.segments.size(), pred.segments.size());
    for (std::size_t i = 0; i < cost.rows; ++i) {
        for (std::size_t j = 0; j < cost.cols; ++j) {
            cost.at(i, j) = iou(gt.segments[i], pred.segments[j]);
        }
    }
    return cost;
}

std::vector<Segment> normalize_segments(std::vector<Segment> segments) {
    std::vector<std::size_t> order(segments.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (segments[a].start != segments[b].start) return segments[a].start < segments[b].start;
        if (segments[a].end != segments[b].end) return segments[a].end < segments[b].end;
        return a < b;
    });
    std::vector<Segment> sorted;
    sorted.reserve(segments.size());
    for (std::size_t idx : order) sorted.push_back(std::move(segments[idx]));
    return sorted;
}

std::vector<Segment> select_top_n(const std::vector<Segment>& segments, std::size_t n) {
    if (segments.size() <= n) return normalize_segments(segments);
    std::vector<std::size_t> order(segments.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return segments[a].confidence.value_or(0.0) > segments[b].confidence.value_or(0.0);
    });
    order.resize(n);
    std::vector<Segment> kept;
    kept.reserve(n);
    for (std::size_t idx : order) kept.push_back(segments[idx]);
    return normalize_segments(std::move(kept));
}

namespace {

[[noreturn]] void fail(const std::string& video_id, std::size_t index, const std::string& what) {
    throw std::runtime_error("video '" + video_id + "', segment " + std::to_string(index) +
                             ": " + what);
}

}  // namespace

void validate_annotation(const VideoAnnotation& video) {
    if (!std::isfinite(video.duration) || video.duration <= 0.0) {
        throw std::runtime_error("video '" + video.video_id + "': duration must be positive");
    }
    for (std::size_t i = 0; i < video.segments.size(); ++i) {
        const Segment& s = video.segments[i];
        if (!std::isfinite(s.start) || !std::isfinite(s.end)) {
            fail(video.video_id, i, "start/end must be finite");
        }
        if (s.end <= s.start) {
            fail(video.video_id, i, "end must be greater than start");
        }
        if (s.start < 0.0 || s.end > video.duration) {
            fail(video.video_id, i, "segment outside [0, duration]");
        }
        if (s.confidence && (!std::isfinite(*s.confidence) || *s.confidence < 0.0 ||
                             *s.confidence > 1.0)) {
            fail(video.video_id, i, "confidence outside [0, 1]");
        }
    }
}

void validate_ground_truth(const VideoAnnotation& video) {
    validate_annotation(video);
    for (std::size_t i = 1; i < video.segments.size(); ++i) {
        if (video.segments[i].start < video.segments[i - 1].start) {
            fail(video.video_id, i, "ground-truth segments must be sorted by start");
        }
        if (video.segments[i].start < video.segments[i - 1].end) {
            fail(video.video_id, i, "ground-truth segments must not overlap");
        }
    }
}

}  // namespace segeval
