/**
 * Constructed instances that make the metric failure modes concrete. The
 * endpoints are dyadic rationals chosen so the interesting IoU values come
 * out as exact decimals (0.26, 0.32, 0.49, 0.75, ...) in double arithmetic.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval::demo {

struct Instance {
    VideoAnnotation gt;
    VideoAnnotation pred;
};

/// 3 ground-truth segments vs 4 proposals where one proposal is the
/// row-max for two ground-truth rows: the row-max mean reports 0.52 while
/// the best order-respecting 1-to-1 matching averages 0.50.
Instance metric_contrast_instance();

/// 2 ground-truth segments vs 3 proposals where the unordered optimal
/// assignment pairs (g1,p2),(g2,p1) — temporally crossed — while the
/// ordered matcher picks (g1,p2),(g2,p3).
Instance order_violation_instance();

/// Two aligned proposals ([0,9] and [10,18] against [0,10],[10,20]);
/// presenting the columns in swapped order drops the ordered score from
/// 1.7 to 0.9.
Instance order_sensitivity_instance();

/// Family of order_violation-style videos with seeded boundary jitter:
/// one long early straddler that the unordered matcher grabs for the
/// second segment, plus near-target proposals the ordered matcher
/// prefers. Used to compare the two training modes.
struct CrossingSuite {
    std::vector<VideoAnnotation> gt;
    std::vector<std::vector<Segment>> initial_proposals;
};
CrossingSuite order_crossing_suite(std::size_t num_videos, std::uint64_t seed);

}  // namespace segeval::demo
