#include "segeval/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <map>
#include <stdexcept>

#include "parallel.hpp"
#include "segeval/legacy_metrics.hpp"
#include "segeval/ordered_match.hpp"

namespace segeval {

std::string tau_key(const std::string& stem, double tau) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", tau);
    return stem + "@" + buf;
}

namespace {

struct VideoEval {
    std::string id;
    bool empty_predictions = false;
    std::vector<ThresholdMetrics> threshold;  // one per tau
    double miou = 0.0;
    double row_max_sum = 0.0;
    std::size_t gt_count = 0;
    SodaResult soda;
    std::exception_ptr error;
};

}  // namespace

EvalOutcome evaluate_dataset(const std::vector<VideoAnnotation>& gt,
                             const std::vector<VideoAnnotation>& predictions,
                             const EvalRequest& request) {
    for (double tau : request.tau_list) {
        if (!(tau > 0.0 && tau < 1.0)) {
            throw std::invalid_argument("tau must lie in (0,1)");
        }
    }

    std::map<std::string, const VideoAnnotation*> gt_by_id;
    for (const auto& video : gt) {
        if (!gt_by_id.emplace(video.video_id, &video).second) {
            throw std::runtime_error("duplicate ground-truth video id '" + video.video_id + "'");
        }
    }

    std::map<std::string, const VideoAnnotation*> pred_by_id;
    std::vector<std::string> unknown;
    for (const auto& video : predictions) {
        if (!pred_by_id.emplace(video.video_id, &video).second) {
            throw std::runtime_error("duplicate prediction video id '" + video.video_id + "'");
        }
        if (!gt_by_id.count(video.video_id)) {
            unknown.push_back(video.video_id);
        }
    }
    if (!unknown.empty()) {
        std::string msg = "predictions reference unknown video ids:";
        for (const auto& id : unknown) msg += " '" + id + "'";
        throw std::runtime_error(msg);
    }

    // one slot per ground-truth video, id-sorted via the map
    std::vector<const VideoAnnotation*> gt_order;
    gt_order.reserve(gt_by_id.size());
    for (const auto& [id, video] : gt_by_id) gt_order.push_back(video);

    const bool want_legacy = request.metrics != MetricFamily::Soda;
    const bool want_soda = request.metrics != MetricFamily::Legacy;

    std::vector<VideoEval> evals(gt_order.size());
    detail::parallel_for(gt_order.size(), [&](std::size_t idx) {
        VideoEval& out = evals[idx];
        const VideoAnnotation& reference = *gt_order[idx];
        out.id = reference.video_id;
        out.gt_count = reference.segments.size();
        try {
            VideoAnnotation pred;
            if (auto it = pred_by_id.find(reference.video_id); it != pred_by_id.end()) {
                pred = *it->second;
            } else {
                pred.video_id = reference.video_id;
                pred.duration = reference.duration;
            }
            pred.segments = request.top_n ? select_top_n(pred.segments, *request.top_n)
                                          : normalize_segments(pred.segments);
            out.empty_predictions = pred.segments.empty();

            const CostMatrix cost = build_cost_matrix(reference, pred);
            if (want_legacy) {
                for (double tau : request.tau_list) {
                    out.threshold.push_back(threshold_precision_recall(cost, tau));
                }
                out.miou = mean_iou(cost);
                for (std::size_t i = 0; i < cost.rows; ++i) {
                    double best = 0.0;
                    for (std::size_t j = 0; j < cost.cols; ++j) {
                        best = std::max(best, cost.at(i, j));
                    }
                    out.row_max_sum += best;
                }
            }
            if (want_soda) {
                out.soda = soda_match(reference, pred);
            }
        } catch (...) {
            out.error = std::current_exception();
        }
    }, request.num_threads);

    for (const auto& eval : evals) {
        if (eval.error) std::rethrow_exception(eval.error);
    }

    EvalOutcome outcome;
    std::vector<VideoOverlapStats> overlap_stats;
    std::vector<double> jaccard_means;
    std::vector<SodaMetrics> soda_metrics;
    std::vector<SodaResult> soda_results;
    std::vector<double> threshold_sums;  // per tau: precision, recall, f1 running sums
    threshold_sums.assign(request.tau_list.size() * 3, 0.0);

    for (const auto& eval : evals) {
        Report::VideoRow row;
        row.id = eval.id;
        if (eval.empty_predictions) {
            outcome.warnings.push_back("video '" + eval.id +
                                       "' has no predictions; metrics are zero");
        }
        if (want_legacy) {
            for (std::size_t t = 0; t < request.tau_list.size(); ++t) {
                const ThresholdMetrics& m = eval.threshold[t];
                row.metrics.emplace_back(tau_key("precision", m.tau), m.precision);
                row.metrics.emplace_back(tau_key("recall", m.tau), m.recall);
                row.metrics.emplace_back(tau_key("f1", m.tau), m.f1);
                threshold_sums[t * 3 + 0] += m.precision;
                threshold_sums[t * 3 + 1] += m.recall;
                threshold_sums[t * 3 + 2] += m.f1;
            }
            row.metrics.emplace_back("miou", eval.miou);
            row.metrics.emplace_back("mjaccard", eval.miou);
            overlap_stats.push_back({eval.row_max_sum, eval.gt_count});
            jaccard_means.push_back(eval.miou);
        }
        if (want_soda) {
            const SodaMetrics& m = eval.soda.metrics;
            row.metrics.emplace_back("soda-precision", m.precision);
            row.metrics.emplace_back("soda-recall", m.recall);
            row.metrics.emplace_back("soda-f1", m.f1);
            row.metrics.emplace_back("soda-miou", m.matched_miou);
            soda_metrics.push_back(m);
            soda_results.push_back(eval.soda);
        }
        outcome.report.per_video.push_back(std::move(row));
    }

    const double video_count = static_cast<double>(evals.size());
    if (evals.empty()) {
        throw std::runtime_error("no ground-truth videos to evaluate");
    }
    if (want_legacy) {
        for (std::size_t t = 0; t < request.tau_list.size(); ++t) {
            const double tau = request.tau_list[t];
            outcome.report.aggregate.emplace_back(tau_key("precision", tau),
                                                  threshold_sums[t * 3 + 0] / video_count);
            outcome.report.aggregate.emplace_back(tau_key("recall", tau),
                                                  threshold_sums[t * 3 + 1] / video_count);
            outcome.report.aggregate.emplace_back(tau_key("f1", tau),
                                                  threshold_sums[t * 3 + 2] / video_count);
        }
        outcome.report.aggregate.emplace_back("miou", aggregate_miou(overlap_stats));
        outcome.report.aggregate.emplace_back("mjaccard", aggregate_mjaccard(jaccard_means));
    }
    if (want_soda) {
        const SodaMetrics agg = request.aggregation == Aggregation::MeanOverVideos
                                    ? aggregate(soda_metrics)
                                    : aggregate_micro(soda_results);
        outcome.report.aggregate.emplace_back("soda-precision", agg.precision);
        outcome.report.aggregate.emplace_back("soda-recall", agg.recall);
        outcome.report.aggregate.emplace_back("soda-f1", agg.f1);
        outcome.report.aggregate.emplace_back("soda-miou", agg.matched_miou);
    }
    return outcome;
}

}  // namespace segeval
