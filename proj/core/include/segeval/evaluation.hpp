/**
 * Dataset-level evaluation: pairs prediction videos with their references,
 * runs the requested metric families per video (in parallel), and
 * assembles the report. Ground-truth videos without predictions are scored
 * as empty with a warning rather than failing, so degenerate model outputs
 * still produce a full report.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "segeval/annotation_io.hpp"
#include "segeval/segment.hpp"

namespace segeval {

enum class MetricFamily { Legacy, Soda, All };
enum class Aggregation { MeanOverVideos, MicroSegments };

struct EvalRequest {
    MetricFamily metrics = MetricFamily::All;
    std::vector<double> tau_list = {0.3, 0.5, 0.7};
    std::optional<std::size_t> top_n;
    double gamma = 0.1;  // carried for soft-matching diagnostics
    Aggregation aggregation = Aggregation::MeanOverVideos;
    unsigned num_threads = 0;  // 0: hardware concurrency
};

struct EvalOutcome {
    Report report;
    std::vector<std::string> warnings;
};

/// Throws std::invalid_argument for bad tau values and std::runtime_error
/// listing the offending ids when predictions reference unknown videos.
EvalOutcome evaluate_dataset(const std::vector<VideoAnnotation>& gt,
                             const std::vector<VideoAnnotation>& predictions,
                             const EvalRequest& request);

/// Metric key helper: "precision@0.3" and friends.
std::string tau_key(const std::string& stem, double tau);

}  // namespace segeval
