#include "segeval/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "parallel.hpp"
#include "segeval/assignment.hpp"
#include "segeval/random.hpp"
#include "segeval/soft_match.hpp"

namespace segeval {

namespace {

double squash(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double squash_grad(double x) {
    const double s = squash(x);
    return s * (1.0 - s);
}
double logit(double p) { return std::log(p / (1.0 - p)); }

// Derivatives of the decoded boundaries with respect to the two
// parameters; clipped boundaries sit on a flat piece and get zero.
struct DecodeGrad {
    double dstart_dc = 0.0, dstart_dh = 0.0;
    double dend_dc = 0.0, dend_dh = 0.0;
};

DecodeGrad decode_grad(double center, double log_halfwidth, double duration) {
    const double dc = duration * squash_grad(center);
    const double dh = duration * squash_grad(log_halfwidth) / 2.0;
    const double c = duration * squash(center);
    const double h = duration * squash(log_halfwidth) / 2.0;
    DecodeGrad g;
    if (c - h > 0.0) {
        g.dstart_dc = dc;
        g.dstart_dh = -dh;
    }
    if (c + h < duration) {
        g.dend_dc = dc;
        g.dend_dh = dh;
    }
    return g;
}

ProposalParams tiling_init(const VideoAnnotation& gt, int num_proposals, double init_jitter,
                           std::uint64_t seed) {
    const int count = num_proposals > 0 ? num_proposals
                                        : static_cast<int>(gt.segments.size());
    Rng rng(seed);
    ProposalParams params;
    params.center.reserve(count);
    params.log_halfwidth.reserve(count);
    const double width_fraction = std::min(1.0 / static_cast<double>(count), 0.9);
    for (int i = 0; i < count; ++i) {
        const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        params.center.push_back(logit(frac) + init_jitter * rng.normal(0.0, 1.0));
        params.log_halfwidth.push_back(logit(width_fraction) +
                                       init_jitter * rng.normal(0.0, 1.0));
    }
    return params;
}

SodaMetrics evaluate_hard(const VideoAnnotation& gt, const std::vector<Segment>& proposals) {
    VideoAnnotation pred;
    pred.video_id = gt.video_id;
    pred.duration = gt.duration;
    pred.segments = proposals;
    return soda_d(gt, pred);
}

}  // namespace

Segment decode_proposal(double center, double log_halfwidth, double duration) {
    const double c = duration * squash(center);
    const double h = duration * squash(log_halfwidth) / 2.0;
    Segment seg;
    seg.start = std::max(0.0, c - h);
    seg.end = std::min(duration, c + h);
    return seg;
}

std::vector<Segment> decode_proposals(const ProposalParams& params, double duration) {
    std::vector<Segment> out;
    out.reserve(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        out.push_back(decode_proposal(params.center[i], params.log_halfwidth[i], duration));
    }
    return out;
}

ProposalParams encode_proposals(const std::vector<Segment>& segments, double duration) {
    // keep encodable values strictly inside the squash range
    const double eps = 1e-6;
    ProposalParams params;
    for (const auto& seg : segments) {
        const double center = std::clamp(0.5 * (seg.start + seg.end) / duration, eps, 1.0 - eps);
        const double width = std::clamp(seg.length() / duration, eps, 1.0 - eps);
        params.center.push_back(logit(center));
        params.log_halfwidth.push_back(logit(width));
    }
    return params;
}

std::pair<double, ParamGrad> soft_loss_param_grad(const VideoAnnotation& gt,
                                                  const ProposalParams& params, double gamma) {
    const double duration = gt.duration;
    const std::vector<Segment> proposals = decode_proposals(params, duration);
    const SoftLossResult soft = soft_match_loss(gt, proposals, gamma);

    ParamGrad grad;
    grad.d_center.assign(params.size(), 0.0);
    grad.d_log_halfwidth.assign(params.size(), 0.0);
    for (std::size_t j = 0; j < params.size(); ++j) {
        const DecodeGrad dg = decode_grad(params.center[j], params.log_halfwidth[j], duration);
        const BoundaryGrad& bg = soft.boundary_grad[j];
        grad.d_center[j] = bg.d_start * dg.dstart_dc + bg.d_end * dg.dend_dc;
        grad.d_log_halfwidth[j] = bg.d_start * dg.dstart_dh + bg.d_end * dg.dend_dh;
    }
    return {soft.loss, std::move(grad)};
}

std::pair<double, ParamGrad> hungarian_loss_param_grad(const VideoAnnotation& gt,
                                                       const ProposalParams& params) {
    const double duration = gt.duration;
    const std::vector<Segment> proposals = decode_proposals(params, duration);
    VideoAnnotation pred;
    pred.video_id = gt.video_id;
    pred.duration = duration;
    pred.segments = proposals;
    const Assignment assignment = hungarian_match(build_cost_matrix(gt, pred));

    double loss = 0.0;
    ParamGrad grad;
    grad.d_center.assign(params.size(), 0.0);
    grad.d_log_halfwidth.assign(params.size(), 0.0);
    for (const auto& pair : assignment.pairs) {
        const Segment& g = gt.segments[pair.gt_index];
        const Segment& p = proposals[pair.pred_index];
        loss += std::abs(p.start - g.start) + std::abs(p.end - g.end);
        const double sign_start = p.start > g.start ? 1.0 : (p.start < g.start ? -1.0 : 0.0);
        const double sign_end = p.end > g.end ? 1.0 : (p.end < g.end ? -1.0 : 0.0);
        const DecodeGrad dg =
            decode_grad(params.center[pair.pred_index], params.log_halfwidth[pair.pred_index],
                        duration);
        grad.d_center[pair.pred_index] += sign_start * dg.dstart_dc + sign_end * dg.dend_dc;
        grad.d_log_halfwidth[pair.pred_index] +=
            sign_start * dg.dstart_dh + sign_end * dg.dend_dh;
    }
    return {loss, std::move(grad)};
}

TrainResult train_instance(const VideoAnnotation& gt, const TrainConfig& config,
                           const std::optional<std::vector<Segment>>& initial) {
    if (gt.segments.empty()) {
        throw std::invalid_argument("train_instance requires ground-truth segments");
    }
    if (!(config.step_size > 0.0)) {
        throw std::invalid_argument("step_size must be positive");
    }
    if (config.iterations < 0) {
        throw std::invalid_argument("iterations must be nonnegative");
    }

    ProposalParams params = initial
        ? encode_proposals(*initial, gt.duration)
        : tiling_init(gt, config.num_proposals, config.init_jitter, config.seed);

    TrainResult result;
    result.initial_proposals = decode_proposals(params, gt.duration);

    auto loss_and_grad = [&](const ProposalParams& p) {
        return config.matcher == MatcherKind::SoftSoda
                   ? soft_loss_param_grad(gt, p, config.gamma)
                   : hungarian_loss_param_grad(gt, p);
    };

    for (int iter = 0; iter <= config.iterations; ++iter) {
        auto [loss, grad] = loss_and_grad(params);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("training diverged at iteration " + std::to_string(iter));
        }
        result.trajectory.push_back(
            {iter, loss, evaluate_hard(gt, decode_proposals(params, gt.duration))});
        if (iter == config.iterations) break;
        for (std::size_t j = 0; j < params.size(); ++j) {
            params.center[j] -= config.step_size * grad.d_center[j];
            params.log_halfwidth[j] -= config.step_size * grad.d_log_halfwidth[j];
        }
    }
    result.final_proposals = decode_proposals(params, gt.duration);
    return result;
}

SuiteSummary train_suite(const std::vector<VideoAnnotation>& dataset, const TrainConfig& base,
                         const std::vector<std::uint64_t>& seeds,
                         const std::vector<std::vector<Segment>>* initial_per_video) {
    if (dataset.empty()) {
        throw std::invalid_argument("train_suite over an empty dataset");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("train_suite needs at least one seed");
    }
    if (initial_per_video && initial_per_video->size() != dataset.size()) {
        throw std::invalid_argument("one initial proposal set per video expected");
    }

    struct Slot {
        double initial_f1 = 0.0;
        double final_f1 = 0.0;
        std::exception_ptr error;
    };
    const MatcherKind modes[2] = {MatcherKind::SoftSoda, MatcherKind::Hungarian};
    const std::size_t runs = dataset.size() * seeds.size();
    std::vector<Slot> slots(runs * 2);

    detail::parallel_for(runs * 2, [&](std::size_t idx) {
        const std::size_t mode_idx = idx / runs;
        const std::size_t run = idx % runs;
        const std::size_t video = run / seeds.size();
        const std::size_t seed_idx = run % seeds.size();
        try {
            TrainConfig config = base;
            config.matcher = modes[mode_idx];
            config.seed = seeds[seed_idx];
            std::optional<std::vector<Segment>> init;
            if (initial_per_video) init = (*initial_per_video)[video];
            const TrainResult r = train_instance(dataset[video], config, init);
            slots[idx].initial_f1 = r.trajectory.front().metrics.f1;
            slots[idx].final_f1 = r.trajectory.back().metrics.f1;
        } catch (...) {
            slots[idx].error = std::current_exception();
        }
    });

    for (const auto& slot : slots) {
        if (slot.error) std::rethrow_exception(slot.error);
    }

    SuiteSummary summary;
    summary.runs_per_mode = runs;
    SuiteModeStats* stats[2] = {&summary.soft_soda, &summary.hungarian};
    for (std::size_t mode_idx = 0; mode_idx < 2; ++mode_idx) {
        double initial = 0.0, final_f1 = 0.0;
        for (std::size_t run = 0; run < runs; ++run) {
            initial += slots[mode_idx * runs + run].initial_f1;
            final_f1 += slots[mode_idx * runs + run].final_f1;
        }
        stats[mode_idx]->mean_initial_f1 = initial / static_cast<double>(runs);
        stats[mode_idx]->mean_final_f1 = final_f1 / static_cast<double>(runs);
    }
    return summary;
}

}  // namespace segeval
