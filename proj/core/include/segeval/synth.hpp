/**
 * Seeded synthetic corpus: procedure-style ground truth (sorted,
 * non-overlapping, with background gaps) plus controlled prediction
 * perturbations, supplying reproducible desk-scale inputs for metric
 * comparisons, property tests and the toy trainer.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

struct Perturbation {
    double jitter_sigma = 0.0;   // Gaussian noise on both boundaries, seconds
    double drop_prob = 0.0;      // remove a segment
    double duplicate_prob = 0.0; // insert an exact copy next to it
    double swap_prob = 0.0;      // exchange centers with the next segment
    double spurious_prob = 0.0;  // insert an unrelated segment
};

struct SynthConfig {
    std::uint64_t seed = 0;
    std::size_t num_videos = 0;
    double duration_min = 0.0;
    double duration_max = 0.0;
    int segments_min = 0;
    int segments_max = 0;
    double gap_fraction = 0.0;  // share of each video left as background
    Perturbation perturbation;
};

/// Throws std::invalid_argument describing the first violated field.
void validate_config(const SynthConfig& config);

/// Deterministic for a fixed seed. Throws std::runtime_error when the
/// requested segment count cannot fit the duration at a minimum viable
/// segment length.
std::vector<VideoAnnotation> generate_gt(const SynthConfig& config);

/// Applies jitter, drops, duplicates, center swaps and spurious insertions
/// in that fixed order. The result is a valid prediction annotation
/// (segments inside [0, duration], possibly overlapping or empty).
VideoAnnotation perturb(const VideoAnnotation& gt, const Perturbation& perturbation,
                        std::uint64_t seed);

/// Plain-text `key = value` config document, one pair per line, `#` comments.
SynthConfig load_synth_config(const std::filesystem::path& path);

}  // namespace segeval
