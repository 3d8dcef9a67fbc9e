#include "segeval/ordered_match.hpp"

#include "segeval/legacy_metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace segeval {

DpTable dp_fill(const CostMatrix& cost) {
    DpTable table(cost.rows, cost.cols);
    for (std::size_t i = 1; i <= cost.rows; ++i) {
        for (std::size_t j = 1; j <= cost.cols; ++j) {
            const double c = cost.at(i - 1, j - 1);
            const double diag = table.score(i - 1, j - 1) + c;
            const double top = table.score(i - 1, j);
            const double left = table.score(i, j - 1);
            const double best = std::max({diag, top, left});
            Move move;
            if (c > 0.0 && diag == best) {
                move = Move::Diagonal;
            } else if (top == best) {
                move = Move::Top;
            } else if (left == best) {
                move = Move::Left;
            } else {
                move = Move::Diagonal;  // zero-IoU diagonal, only path left
            }
            table.score(i, j) = best;
            table.move(i, j) = move;
        }
    }
    return table;
}

Matching traceback(const DpTable& table, const CostMatrix& cost) {
    Matching matching;
    std::size_t i = cost.rows;
    std::size_t j = cost.cols;
    while (i > 0 && j > 0) {
        switch (table.move(i, j)) {
            case Move::Diagonal: {
                const double c = cost.at(i - 1, j - 1);
                if (c > 0.0) {
                    matching.pairs.push_back({i - 1, j - 1, c});
                }
                --i;
                --j;
                break;
            }
            case Move::Top:
                --i;
                break;
            case Move::Left:
                --j;
                break;
        }
    }
    std::reverse(matching.pairs.begin(), matching.pairs.end());
    matching.total_score = table.score(cost.rows, cost.cols);
    return matching;
}

SodaMetrics metrics_from_matching(const Matching& matching, std::size_t num_gt,
                                  std::size_t num_pred) {
    SodaMetrics out;
    if (num_pred > 0) {
        out.precision = matching.total_score / static_cast<double>(num_pred);
    }
    if (num_gt > 0) {
        out.recall = matching.total_score / static_cast<double>(num_gt);
        out.matched_miou = out.recall;
    }
    out.f1 = harmonic_f1(out.precision, out.recall);
    return out;
}

SodaResult soda_match(const VideoAnnotation& gt, const VideoAnnotation& pred,
                      std::optional<std::size_t> top_n) {
    VideoAnnotation normalized = pred;
    normalized.segments = top_n ? select_top_n(pred.segments, *top_n)
                                : normalize_segments(pred.segments);
    SodaResult result;
    result.num_gt = gt.segments.size();
    result.num_pred = normalized.segments.size();
    const CostMatrix cost = build_cost_matrix(gt, normalized);
    const DpTable table = dp_fill(cost);
    result.matching = traceback(table, cost);
    result.metrics = metrics_from_matching(result.matching, result.num_gt, result.num_pred);
    return result;
}

SodaMetrics soda_d(const VideoAnnotation& gt, const VideoAnnotation& pred,
                   std::optional<std::size_t> top_n) {
    return soda_match(gt, pred, top_n).metrics;
}

SodaMetrics aggregate(const std::vector<SodaMetrics>& per_video) {
    if (per_video.empty()) {
        throw std::invalid_argument("aggregate over an empty metric list");
    }
    SodaMetrics out;
    for (const auto& m : per_video) {
        out.precision += m.precision;
        out.recall += m.recall;
        out.f1 += m.f1;
        out.matched_miou += m.matched_miou;
    }
    const double n = static_cast<double>(per_video.size());
    out.precision /= n;
    out.recall /= n;
    out.f1 /= n;
    out.matched_miou /= n;
    return out;
}

SodaMetrics aggregate_micro(const std::vector<SodaResult>& per_video) {
    if (per_video.empty()) {
        throw std::invalid_argument("aggregate over an empty result list");
    }
    double total = 0.0;
    std::size_t gt_count = 0;
    std::size_t pred_count = 0;
    for (const auto& r : per_video) {
        total += r.matching.total_score;
        gt_count += r.num_gt;
        pred_count += r.num_pred;
    }
    SodaMetrics out;
    if (pred_count > 0) out.precision = total / static_cast<double>(pred_count);
    if (gt_count > 0) {
        out.recall = total / static_cast<double>(gt_count);
        out.matched_miou = out.recall;
    }
    out.f1 = harmonic_f1(out.precision, out.recall);
    return out;
}

}  // namespace segeval
