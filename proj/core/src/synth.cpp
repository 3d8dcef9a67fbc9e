#include "segeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "segeval/random.hpp"

namespace segeval {

namespace {

constexpr double kMinSegmentLength = 0.1;  // seconds

void check(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("synth config: ") + what);
}

void check_probability(double p, const char* what) {
    check(p >= 0.0 && p <= 1.0, what);
}

// Clamp into [0, duration] and repair inverted/empty intervals around
// their midpoint so the result is always a valid segment.
Segment clamp_segment(double start, double end, double duration) {
    start = std::clamp(start, 0.0, duration);
    end = std::clamp(end, 0.0, duration);
    if (end <= start) {
        const double mid = 0.5 * (start + end);
        start = std::max(0.0, mid - 0.05);
        end = std::min(duration, mid + 0.05);
        if (end <= start) {  // pathologically short video
            start = 0.0;
            end = duration;
        }
    }
    Segment seg;
    seg.start = start;
    seg.end = end;
    return seg;
}

std::vector<double> random_partition(Rng& rng, std::size_t parts, double total) {
    std::vector<double> weights(parts);
    double sum = 0.0;
    for (auto& w : weights) {
        w = rng.uniform(0.5, 1.5);
        sum += w;
    }
    for (auto& w : weights) w = w / sum * total;
    return weights;
}

}  // namespace

void validate_config(const SynthConfig& config) {
    check(config.duration_min > 0.0 && config.duration_max >= config.duration_min,
          "duration range must be positive and nonempty");
    check(config.segments_min > 0 && config.segments_max >= config.segments_min,
          "segment count range must be positive and nonempty");
    check(config.gap_fraction >= 0.0 && config.gap_fraction < 1.0,
          "gap_fraction must lie in [0,1)");
    check_probability(config.perturbation.drop_prob, "drop_prob must lie in [0,1]");
    check_probability(config.perturbation.duplicate_prob, "duplicate_prob must lie in [0,1]");
    check_probability(config.perturbation.swap_prob, "swap_prob must lie in [0,1]");
    check_probability(config.perturbation.spurious_prob, "spurious_prob must lie in [0,1]");
    check(config.perturbation.jitter_sigma >= 0.0, "jitter_sigma must be nonnegative");
}

std::vector<VideoAnnotation> generate_gt(const SynthConfig& config) {
    validate_config(config);
    Rng rng(config.seed);
    std::vector<VideoAnnotation> videos;
    videos.reserve(config.num_videos);

    for (std::size_t v = 0; v < config.num_videos; ++v) {
        VideoAnnotation video;
        char id[32];
        std::snprintf(id, sizeof(id), "synth-%04zu", v);
        video.video_id = id;
        video.duration = rng.uniform(config.duration_min, config.duration_max);

        const auto k = static_cast<std::size_t>(
            rng.uniform_int(config.segments_min, config.segments_max));
        const double segment_time = (1.0 - config.gap_fraction) * video.duration;
        if (segment_time / static_cast<double>(k) < kMinSegmentLength) {
            throw std::runtime_error("synth: cannot fit " + std::to_string(k) +
                                     " segments into video '" + video.video_id + "'");
        }

        const auto seg_lengths = random_partition(rng, k, segment_time);
        const auto gap_lengths =
            random_partition(rng, k + 1, video.duration - segment_time);

        double cursor = gap_lengths[0];
        for (std::size_t i = 0; i < k; ++i) {
            Segment seg;
            seg.start = cursor;
            seg.end = std::min(cursor + seg_lengths[i], video.duration);
            seg.summary = "step " + std::to_string(i + 1);
            video.segments.push_back(seg);
            cursor = seg.end + gap_lengths[i + 1];
        }
        videos.push_back(std::move(video));
    }
    return videos;
}

VideoAnnotation perturb(const VideoAnnotation& gt, const Perturbation& perturbation,
                        std::uint64_t seed) {
    Rng rng(seed);
    const double duration = gt.duration;

    // jitter
    std::vector<Segment> segments;
    segments.reserve(gt.segments.size());
    for (const auto& seg : gt.segments) {
        const double start = seg.start + rng.normal(0.0, perturbation.jitter_sigma);
        const double end = seg.end + rng.normal(0.0, perturbation.jitter_sigma);
        Segment jittered = clamp_segment(start, end, duration);
        jittered.summary = seg.summary;
        segments.push_back(jittered);
    }

    // drop
    std::vector<Segment> kept;
    for (auto& seg : segments) {
        if (!rng.bernoulli(perturbation.drop_prob)) kept.push_back(std::move(seg));
    }

    // duplicate
    std::vector<Segment> duplicated;
    for (auto& seg : kept) {
        const bool copy = rng.bernoulli(perturbation.duplicate_prob);
        duplicated.push_back(seg);
        if (copy) duplicated.push_back(seg);
    }

    // swap adjacent centers (lengths stay put, so unequal neighbors cross)
    for (std::size_t i = 0; i + 1 < duplicated.size();) {
        if (rng.bernoulli(perturbation.swap_prob)) {
            const Segment a = duplicated[i];
            const Segment b = duplicated[i + 1];
            const double ca = 0.5 * (a.start + a.end);
            const double cb = 0.5 * (b.start + b.end);
            const double ha = 0.5 * a.length();
            const double hb = 0.5 * b.length();
            duplicated[i] = clamp_segment(cb - ha, cb + ha, duration);
            duplicated[i].summary = a.summary;
            duplicated[i + 1] = clamp_segment(ca - hb, ca + hb, duration);
            duplicated[i + 1].summary = b.summary;
            i += 2;
        } else {
            ++i;
        }
    }

    // spurious insertions, appended after the real proposals
    VideoAnnotation out;
    out.video_id = gt.video_id;
    out.duration = duration;
    out.segments = std::move(duplicated);
    const std::size_t base = out.segments.size();
    for (std::size_t i = 0; i < base; ++i) {
        if (rng.bernoulli(perturbation.spurious_prob)) {
            const double length = rng.uniform(kMinSegmentLength, std::max(kMinSegmentLength * 2,
                                                                          duration * 0.1));
            const double start = rng.uniform(0.0, duration);
            Segment seg = clamp_segment(start, start + length, duration);
            seg.summary = "spurious";
            out.segments.push_back(seg);
        }
    }
    return out;
}

SynthConfig load_synth_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open synth config: " + path.string());
    }
    SynthConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream stream(line);
        std::string key, eq;
        if (!(stream >> key)) continue;
        if (!(stream >> eq) || eq != "=") {
            throw std::runtime_error("synth config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        double value = 0.0;
        if (!(stream >> value)) {
            throw std::runtime_error("synth config line " + std::to_string(line_no) +
                                     ": expected a numeric value for " + key);
        }
        if (key == "seed") config.seed = static_cast<std::uint64_t>(value);
        else if (key == "num_videos") config.num_videos = static_cast<std::size_t>(value);
        else if (key == "duration_min") config.duration_min = value;
        else if (key == "duration_max") config.duration_max = value;
        else if (key == "segments_min") config.segments_min = static_cast<int>(value);
        else if (key == "segments_max") config.segments_max = static_cast<int>(value);
        else if (key == "gap_fraction") config.gap_fraction = value;
        else if (key == "jitter_sigma") config.perturbation.jitter_sigma = value;
        else if (key == "drop_prob") config.perturbation.drop_prob = value;
        else if (key == "duplicate_prob") config.perturbation.duplicate_prob = value;
        else if (key == "swap_prob") config.perturbation.swap_prob = value;
        else if (key == "spurious_prob") config.perturbation.spurious_prob = value;
        else {
            throw std::runtime_error("synth config line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }
    validate_config(config);
    return config;
}

}  // namespace segeval
