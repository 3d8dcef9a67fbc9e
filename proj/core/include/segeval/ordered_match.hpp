/**
 * Order-constrained segment matching (SODA-D).
 *
 * A dynamic program over the IoU cost matrix finds the maximum-sum
 * monotone 1-to-1 pairing of ground-truth rows and prediction columns:
 *
 *   S[i][j] = max( S[i-1][j], S[i-1][j-1] + C[i-1][j-1], S[i][j-1] )
 *
 * with a zero boundary. Traceback over the recorded moves recovers the
 * matched pairs; precision normalizes the matched IoU sum by the
 * prediction count, recall by the ground-truth count, so emitting more
 * proposals than segments costs precision (the over-segmentation penalty
 * the row-max metrics lack).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

enum class Move : std::uint8_t { Left, Top, Diagonal };

struct DpTable {
    std::size_t rows = 0;  // m + 1
    std::size_t cols = 0;  // n + 1
    std::vector<double> scores;
    std::vector<Move> moves;

    DpTable() = default;
    DpTable(std::size_t m, std::size_t n)
        : rows(m + 1), cols(n + 1), scores(rows * cols, 0.0), moves(rows * cols, Move::Left) {}

    double& score(std::size_t i, std::size_t j) { return scores[i * cols + j]; }
    double score(std::size_t i, std::size_t j) const { return scores[i * cols + j]; }
    Move& move(std::size_t i, std::size_t j) { return moves[i * cols + j]; }
    Move move(std::size_t i, std::size_t j) const { return moves[i * cols + j]; }
};

struct MatchedPair {
    std::size_t gt_index = 0;
    std::size_t pred_index = 0;
    double iou = 0.0;
};

/// Strictly increasing in both indices; iou of every pair is positive.
struct Matching {
    std::vector<MatchedPair> pairs;
    double total_score = 0.0;
};

struct SodaMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double matched_miou = 0.0;  // total matched IoU / |G|
};

/// Fills the DP table. Argmax ties prefer Diagonal, then Top, then Left,
/// except that a zero-IoU diagonal is never preferred over an equal
/// alternative (a zero-overlap "match" is semantically unmatched).
DpTable dp_fill(const CostMatrix& cost);

/// Walks the recorded moves from (m,n) back to (0,0). Diagonal steps with
/// positive IoU emit pairs, returned in temporal order.
Matching traceback(const DpTable& table, const CostMatrix& cost);

SodaMetrics metrics_from_matching(const Matching& matching, std::size_t num_gt,
                                  std::size_t num_pred);

/// Per-video result keeping the counts needed for micro-averaging.
struct SodaResult {
    Matching matching;
    SodaMetrics metrics;
    std::size_t num_gt = 0;
    std::size_t num_pred = 0;
};

/// End-to-end per-video evaluation: optional top-N confidence selection,
/// temporal normalization of predictions, cost matrix, DP, traceback.
/// Empty predictions yield all-zero metrics.
SodaResult soda_match(const VideoAnnotation& gt, const VideoAnnotation& pred,
                      std::optional<std::size_t> top_n = std::nullopt);

SodaMetrics soda_d(const VideoAnnotation& gt, const VideoAnnotation& pred,
                   std::optional<std::size_t> top_n = std::nullopt);

/// Dataset aggregation: unweighted mean of the per-video metrics.
/// Throws std::invalid_argument on an empty list.
SodaMetrics aggregate(const std::vector<SodaMetrics>& per_video);

/// Micro-average alternative: sums matched IoU and counts over the whole
/// dataset before normalizing.
SodaMetrics aggregate_micro(const std::vector<SodaResult>& per_video);

}  // namespace segeval
