/**
 * Toy boundary-refinement loop. Proposals live in an unconstrained
 * parameter space (logistic-squashed center and half-width, so decoded
 * segments are always valid), and plain constant-step gradient descent
 * drives either
 *
 *   - the differentiable ordered-matching loss (m - soft_score), or
 *   - an L1 boundary loss on Hungarian-matched pairs, re-matched every
 *     step, as set-prediction training does.
 *
 * Trajectories are fully deterministic per seed, which keeps the
 * order-constrained-vs-Hungarian comparison auditable.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "segeval/ordered_match.hpp"
#include "segeval/segment.hpp"

namespace segeval {

enum class MatcherKind { SoftSoda, Hungarian };

struct TrainConfig {
    MatcherKind matcher = MatcherKind::SoftSoda;
    double gamma = 0.1;         // smoothing temperature (SoftSoda)
    double step_size = 0.05;
    int iterations = 200;
    int num_proposals = 0;      // 0: one proposal per ground-truth segment
    double init_jitter = 0.25;  // parameter-space sigma on the uniform tiling init
    std::uint64_t seed = 0;
};

/// Unconstrained proposal parameters. Decoding maps through the logistic
/// squash: center' = duration*squash(center), halfwidth' =
/// duration*squash(log_halfwidth)/2, segment = [center'-halfwidth',
/// center'+halfwidth'] clipped to [0, duration].
struct ProposalParams {
    std::vector<double> center;
    std::vector<double> log_halfwidth;

    std::size_t size() const { return center.size(); }
};

Segment decode_proposal(double center, double log_halfwidth, double duration);
std::vector<Segment> decode_proposals(const ProposalParams& params, double duration);

/// Inverse of the decode map (segments must have positive length inside
/// the video); used to start training from explicit proposals.
ProposalParams encode_proposals(const std::vector<Segment>& segments, double duration);

/// Loss and analytic parameter gradient for the SoftSoda objective.
struct ParamGrad {
    std::vector<double> d_center;
    std::vector<double> d_log_halfwidth;
};
std::pair<double, ParamGrad> soft_loss_param_grad(const VideoAnnotation& gt,
                                                  const ProposalParams& params, double gamma);

/// L1 boundary loss over Hungarian-matched pairs plus its parameter
/// gradient; unmatched proposals receive none.
std::pair<double, ParamGrad> hungarian_loss_param_grad(const VideoAnnotation& gt,
                                                       const ProposalParams& params);

struct TrainRecord {
    int iteration = 0;
    double loss = 0.0;
    SodaMetrics metrics;  // hard ordered-matching evaluation at this point
};

struct TrainResult {
    std::vector<TrainRecord> trajectory;  // entry 0 is the initial state
    std::vector<Segment> initial_proposals;
    std::vector<Segment> final_proposals;
};

/// Runs `config.iterations` descent steps. Throws std::runtime_error
/// naming the iteration if the loss turns non-finite.
TrainResult train_instance(const VideoAnnotation& gt, const TrainConfig& config,
                           const std::optional<std::vector<Segment>>& initial = std::nullopt);

/// Runs every video under both matchers for each seed and averages the
/// initial/final hard F1. Instances run in parallel; aggregation order is
/// fixed, so results are reproducible.
struct SuiteModeStats {
    double mean_initial_f1 = 0.0;
    double mean_final_f1 = 0.0;
};
struct SuiteSummary {
    SuiteModeStats soft_soda;
    SuiteModeStats hungarian;
    std::size_t runs_per_mode = 0;
};
SuiteSummary train_suite(const std::vector<VideoAnnotation>& dataset, const TrainConfig& base,
                         const std::vector<std::uint64_t>& seeds,
                         const std::vector<std::vector<Segment>>* initial_per_video = nullptr);

}  // namespace segeval
