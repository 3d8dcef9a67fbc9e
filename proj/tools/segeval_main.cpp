/**
 * segeval — command-line evaluation and optimization harness for temporal
 * procedure segmentations.
 *
 * Subcommands: eval, match, baseline, synth, train, paper-demo.
 * Exit codes: 0 success, 1 usage error, 2 data error.
 */
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "segeval/annotation_io.hpp"
#include "segeval/assignment.hpp"
#include "segeval/baselines.hpp"
#include "segeval/demo.hpp"
#include "segeval/evaluation.hpp"
#include "segeval/legacy_metrics.hpp"
#include "segeval/ordered_match.hpp"
#include "segeval/soft_match.hpp"
#include "segeval/synth.hpp"
#include "segeval/trainer.hpp"

namespace {

using namespace segeval;

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

void print_cost_matrix(std::ostream& os, const CostMatrix& cost) {
    os << "cost matrix (IoU, ground truth x proposals):\n     ";
    for (std::size_t j = 0; j < cost.cols; ++j) os << "     p" << j + 1;
    os << "\n";
    for (std::size_t i = 0; i < cost.rows; ++i) {
        os << "  g" << i + 1 << " ";
        for (std::size_t j = 0; j < cost.cols; ++j) os << "  " << fixed(cost.at(i, j), 3);
        os << "\n";
    }
}

void print_dp_table(std::ostream& os, const DpTable& table) {
    os << "dp score table:\n";
    for (std::size_t i = 0; i < table.rows; ++i) {
        os << " ";
        for (std::size_t j = 0; j < table.cols; ++j) os << "  " << fixed(table.score(i, j), 3);
        os << "\n";
    }
    os << "traceback moves (L=left, T=top, D=diagonal):\n";
    for (std::size_t i = 1; i < table.rows; ++i) {
        os << "  ";
        for (std::size_t j = 1; j < table.cols; ++j) {
            const char c = table.move(i, j) == Move::Diagonal ? 'D'
                           : table.move(i, j) == Move::Top    ? 'T'
                                                              : 'L';
            os << c << ' ';
        }
        os << "\n";
    }
}

void print_soda_metrics(std::ostream& os, const SodaMetrics& m) {
    os << "soda-precision " << fixed2(report_scale(m.precision)) << "  soda-recall "
       << fixed2(report_scale(m.recall)) << "  soda-f1 " << fixed2(report_scale(m.f1))
       << "  soda-miou " << fixed2(report_scale(m.matched_miou)) << "\n";
}

void print_report_table(std::ostream& os, const Report& report, bool per_video) {
    if (per_video) {
        for (const auto& row : report.per_video) {
            os << row.id << "\n";
            for (const auto& [name, value] : row.metrics) {
                os << "  " << name << " " << fixed2(report_scale(value)) << "\n";
            }
        }
    }
    os << "aggregate (" << report.per_video.size() << " videos)\n";
    for (const auto& [name, value] : report.aggregate) {
        os << "  " << name << " " << fixed2(report_scale(value)) << "\n";
    }
}

int cmd_eval(const std::string& gt_path, const std::string& pred_path, EvalRequest request,
             const std::string& format, const std::string& out_path, bool per_video) {
    const auto gt = load_annotations(gt_path, AnnotationKind::GroundTruth);
    const auto pred = load_annotations(pred_path, AnnotationKind::Prediction);
    const EvalOutcome outcome = evaluate_dataset(gt, pred, request);
    for (const auto& warning : outcome.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    if (!out_path.empty()) {
        save_report(out_path, outcome.report);
    }
    if (format == "structured") {
        if (out_path.empty()) {
            Report copy = outcome.report;
            save_report("/dev/stdout", copy);
        }
    } else {
        print_report_table(std::cout, outcome.report, per_video);
    }
    return 0;
}

int cmd_match(const std::string& gt_path, const std::string& pred_path,
              const std::string& video_id, const std::string& algo, double gamma,
              std::optional<std::size_t> top_n) {
    const auto gt = load_annotations(gt_path, AnnotationKind::GroundTruth);
    const auto pred = load_annotations(pred_path, AnnotationKind::Prediction);
    bool matched_any = false;
    for (const auto& reference : gt) {
        if (!video_id.empty() && reference.video_id != video_id) continue;
        matched_any = true;
        VideoAnnotation hypothesis;
        hypothesis.video_id = reference.video_id;
        hypothesis.duration = reference.duration;
        for (const auto& p : pred) {
            if (p.video_id == reference.video_id) hypothesis = p;
        }
        hypothesis.segments = top_n ? select_top_n(hypothesis.segments, *top_n)
                                    : normalize_segments(hypothesis.segments);
        const CostMatrix cost = build_cost_matrix(reference, hypothesis);

        std::cout << "video " << reference.video_id << " (" << cost.rows << " gt x " << cost.cols
                  << " proposals)\n";
        print_cost_matrix(std::cout, cost);
        if (algo == "soda") {
            const DpTable table = dp_fill(cost);
            print_dp_table(std::cout, table);
            const Matching matching = traceback(table, cost);
            std::cout << "matched pairs:";
            for (const auto& pair : matching.pairs) {
                std::cout << " (g" << pair.gt_index + 1 << ",p" << pair.pred_index + 1 << ","
                          << fixed(pair.iou, 3) << ")";
            }
            std::cout << "\ntotal matched IoU " << fixed(matching.total_score, 4) << "\n";
            print_soda_metrics(std::cout,
                               metrics_from_matching(matching, cost.rows, cost.cols));
        } else if (algo == "hungarian") {
            const Assignment assignment = hungarian_match(cost);
            std::cout << "matched pairs:";
            for (const auto& pair : assignment.pairs) {
                std::cout << " (g" << pair.gt_index + 1 << ",p" << pair.pred_index + 1 << ","
                          << fixed(pair.iou, 3) << ")";
            }
            std::cout << "\ntotal assigned IoU " << fixed(assignment.total_score, 4) << "\n";
        } else {  // soft-soda
            const SoftMatchResult soft = soft_backward(cost, gamma);
            std::cout << "soft score (gamma " << gamma << ") " << fixed(soft.soft_score, 6)
                      << "\nalignment weights:\n";
            for (std::size_t i = 0; i < soft.alignment.rows; ++i) {
                std::cout << " ";
                for (std::size_t j = 0; j < soft.alignment.cols; ++j) {
                    std::cout << "  " << fixed(soft.alignment.at(i, j), 4);
                }
                std::cout << "\n";
            }
        }
        std::cout << "\n";
    }
    if (!matched_any) {
        throw std::runtime_error("no ground-truth video matches id '" + video_id + "'");
    }
    return 0;
}

int cmd_baseline(const std::string& mode_name, const std::string& train_path,
                 const std::string& videos_path, const std::string& out_path) {
    const auto train = load_annotations(train_path, AnnotationKind::GroundTruth);
    const auto targets = videos_path.empty()
                             ? train
                             : load_annotations(videos_path, AnnotationKind::GroundTruth);

    BaselineSpec spec;
    if (mode_name == "avg-count") {
        spec.mode = BaselineMode::AvgCount;
    } else if (mode_name == "avg-duration") {
        spec.mode = BaselineMode::AvgDuration;
    } else {
        spec.mode = BaselineMode::GtCount;
    }
    if (spec.mode != BaselineMode::GtCount) {
        const DatasetStats stats = compute_dataset_stats(train);
        spec.avg_count = stats.avg_count;
        spec.avg_duration = stats.avg_duration;
        std::cerr << "dataset stats: avg segments/video " << spec.avg_count
                  << ", avg segment duration " << fixed(spec.avg_duration, 2) << " s\n";
    }

    std::vector<VideoAnnotation> generated;
    generated.reserve(targets.size());
    for (const auto& video : targets) {
        std::optional<int> gt_count;
        if (spec.mode == BaselineMode::GtCount) {
            gt_count = static_cast<int>(video.segments.size());
        }
        generated.push_back(
            generate_uniform(video.video_id, video.duration, spec, gt_count));
    }
    save_annotations(out_path, generated);
    std::cout << "wrote " << generated.size() << " baseline videos to " << out_path << "\n";
    return 0;
}

int cmd_synth(const std::string& config_path, const std::string& out_gt,
              const std::string& out_pred) {
    const SynthConfig config = load_synth_config(config_path);
    const auto gt = generate_gt(config);
    save_annotations(out_gt, gt);
    std::vector<VideoAnnotation> pred;
    pred.reserve(gt.size());
    for (std::size_t v = 0; v < gt.size(); ++v) {
        pred.push_back(perturb(gt[v], config.perturbation, config.seed + 1 + v));
    }
    save_annotations(out_pred, pred);
    std::cout << "wrote " << gt.size() << " videos to " << out_gt << " and " << out_pred << "\n";
    return 0;
}

int cmd_train(const std::string& gt_path, const std::string& matcher_name, double gamma,
              int steps, double step_size, std::uint64_t seed, int num_proposals,
              const std::string& init_path, const std::string& report_path) {
    const auto gt = load_annotations(gt_path, AnnotationKind::GroundTruth);
    if (gt.empty()) {
        throw std::runtime_error("training file contains no videos");
    }

    TrainConfig config;
    config.matcher = matcher_name == "hungarian" ? MatcherKind::Hungarian
                                                 : MatcherKind::SoftSoda;
    config.gamma = gamma;
    config.iterations = steps;
    config.step_size = step_size;
    config.seed = seed;
    config.num_proposals = num_proposals;

    std::vector<VideoAnnotation> init;
    if (!init_path.empty()) {
        init = load_annotations(init_path, AnnotationKind::Prediction);
    }

    std::ofstream report(report_path);
    if (!report) {
        throw std::runtime_error("cannot write report file: " + report_path);
    }
    double mean_initial_f1 = 0.0;
    double mean_final_f1 = 0.0;
    for (const auto& video : gt) {
        std::optional<std::vector<Segment>> initial;
        for (const auto& iv : init) {
            if (iv.video_id == video.video_id) initial = iv.segments;
        }
        const TrainResult result = train_instance(video, config, initial);
        for (const auto& rec : result.trajectory) {
            nlohmann::ordered_json line;
            line["video"] = video.video_id;
            line["iteration"] = rec.iteration;
            line["loss"] = rec.loss;
            line["f1"] = report_scale(rec.metrics.f1);
            report << line.dump() << "\n";
        }
        mean_initial_f1 += result.trajectory.front().metrics.f1;
        mean_final_f1 += result.trajectory.back().metrics.f1;
    }
    mean_initial_f1 /= static_cast<double>(gt.size());
    mean_final_f1 /= static_cast<double>(gt.size());
    std::cout << "matcher " << matcher_name << ": mean f1 "
              << fixed2(report_scale(mean_initial_f1)) << " -> "
              << fixed2(report_scale(mean_final_f1)) << " over " << gt.size() << " videos ("
              << steps << " steps)\n";
    return 0;
}

int cmd_paper_demo(std::optional<double> gamma) {
    const demo::Instance inst = demo::metric_contrast_instance();
    const CostMatrix cost = build_cost_matrix(inst.gt, inst.pred);
    print_cost_matrix(std::cout, cost);

    const DpTable table = dp_fill(cost);
    print_dp_table(std::cout, table);
    const Matching matching = traceback(table, cost);
    std::cout << "matched pairs:";
    for (const auto& pair : matching.pairs) {
        std::cout << " (g" << pair.gt_index + 1 << ",p" << pair.pred_index + 1 << ","
                  << fixed(pair.iou, 2) << ")";
    }
    std::cout << "\n";

    const ThresholdMetrics threshold = threshold_precision_recall(cost, 0.3);
    std::cout << "threshold tau=0.3: precision " << fixed2(threshold.precision) << ", recall "
              << fixed2(threshold.recall) << "\n";
    const double miou = mean_iou(cost);
    const SodaMetrics soda = metrics_from_matching(matching, cost.rows, cost.cols);
    std::cout << "row-max mean IoU: " << fixed2(miou) << "\n";
    std::cout << "ordered matched mean IoU: " << fixed2(soda.matched_miou) << "\n";
    print_soda_metrics(std::cout, soda);
    std::cout << "row-max averaging reuses proposal p2 for two reference segments and reports "
              << fixed2(miou) << "; the order-respecting 1-to-1 matching yields "
              << fixed2(soda.matched_miou) << ".\n";
    if (gamma) {
        const double soft = soft_forward(cost, *gamma);
        std::cout << "soft score at gamma " << *gamma << ": " << fixed(soft, 6) << " (hard "
                  << fixed(matching.total_score, 6) << ")\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"evaluation and optimization of temporal procedure segmentations"};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand("eval", "score predictions against ground truth");
    std::string eval_gt, eval_pred, eval_metrics = "all", eval_format = "table", eval_out;
    EvalRequest request;
    bool eval_per_video = false;
    int eval_top_n = 0;
    std::string eval_aggregate = "mean";
    eval->add_option("--gt", eval_gt, "ground-truth annotation file")->required();
    eval->add_option("--pred", eval_pred, "prediction annotation file")->required();
    eval->add_option("--metrics", eval_metrics, "metric families: legacy|soda|all")
        ->check(CLI::IsMember({"legacy", "soda", "all"}));
    eval->add_option("--tau", request.tau_list, "IoU thresholds in (0,1)");
    eval->add_option("--top-n", eval_top_n, "keep the N most confident proposals");
    eval->add_option("--aggregate", eval_aggregate, "soda aggregation: mean|micro")
        ->check(CLI::IsMember({"mean", "micro"}));
    eval->add_option("--format", eval_format, "output format: table|structured")
        ->check(CLI::IsMember({"table", "structured"}));
    eval->add_option("--out", eval_out, "write the structured report here");
    eval->add_flag("--per-video", eval_per_video, "print per-video rows in table mode");
    eval->add_option("--threads", request.num_threads, "worker threads (0 = hardware)");

    // match
    auto* match = app.add_subcommand("match", "dump matcher internals for one or all videos");
    std::string match_gt, match_pred, match_video, match_algo = "soda";
    double match_gamma = 0.1;
    int match_top_n = 0;
    match->add_option("--gt", match_gt, "ground-truth annotation file")->required();
    match->add_option("--pred", match_pred, "prediction annotation file")->required();
    match->add_option("--video", match_video, "restrict to one video id");
    match->add_option("--algo", match_algo, "matcher: soda|hungarian|soft-soda")
        ->check(CLI::IsMember({"soda", "hungarian", "soft-soda"}));
    match->add_option("--gamma", match_gamma, "smoothing temperature for soft-soda")
        ->check(CLI::PositiveNumber);
    match->add_option("--top-n", match_top_n, "keep the N most confident proposals");

    // baseline
    auto* baseline = app.add_subcommand("baseline", "generate uniform segmentation baselines");
    std::string baseline_mode, baseline_train, baseline_videos, baseline_out;
    baseline->add_option("--mode", baseline_mode, "avg-count|avg-duration|gt-count")
        ->required()
        ->check(CLI::IsMember({"avg-count", "avg-duration", "gt-count"}));
    baseline->add_option("--train", baseline_train, "training annotations for the statistics")
        ->required();
    baseline->add_option("--videos", baseline_videos,
                         "videos to segment (defaults to the training file)");
    baseline->add_option("--out", baseline_out, "output annotation file")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    std::string synth_config, synth_gt, synth_pred;
    synth->add_option("--config", synth_config, "key = value config file")->required();
    synth->add_option("--out-gt", synth_gt, "output ground-truth file")->required();
    synth->add_option("--out-pred", synth_pred, "output perturbed prediction file")->required();

    // train
    auto* train = app.add_subcommand("train", "toy boundary-refinement training loop");
    std::string train_gt, train_matcher = "soft-soda", train_init, train_report;
    double train_gamma = 0.1, train_step = 0.05;
    int train_steps = 200, train_proposals = 0;
    std::uint64_t train_seed = 0;
    train->add_option("--gt", train_gt, "ground-truth annotation file")->required();
    train->add_option("--matcher", train_matcher, "soft-soda|hungarian")
        ->check(CLI::IsMember({"soft-soda", "hungarian"}));
    train->add_option("--gamma", train_gamma, "smoothing temperature")
        ->check(CLI::PositiveNumber);
    train->add_option("--steps", train_steps, "gradient steps")->check(CLI::NonNegativeNumber);
    train->add_option("--step-size", train_step, "descent step size")
        ->check(CLI::PositiveNumber);
    train->add_option("--seed", train_seed, "initialization seed");
    train->add_option("--num-proposals", train_proposals,
                      "proposal count (0 = ground-truth count)");
    train->add_option("--init", train_init, "explicit initial proposals (annotation file)");
    train->add_option("--report", train_report, "line-delimited trajectory output")->required();

    // paper-demo
    auto* paper_demo =
        app.add_subcommand("paper-demo", "walk the worked metric-comparison example");
    double demo_gamma = 0.0;
    auto* demo_gamma_opt =
        paper_demo->add_option("--gamma", demo_gamma, "also print the soft score")
            ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval->parsed()) {
            request.metrics = eval_metrics == "legacy" ? MetricFamily::Legacy
                              : eval_metrics == "soda" ? MetricFamily::Soda
                                                       : MetricFamily::All;
            request.aggregation = eval_aggregate == "micro" ? Aggregation::MicroSegments
                                                            : Aggregation::MeanOverVideos;
            if (eval_top_n > 0) request.top_n = static_cast<std::size_t>(eval_top_n);
            return cmd_eval(eval_gt, eval_pred, request, eval_format, eval_out, eval_per_video);
        }
        if (match->parsed()) {
            std::optional<std::size_t> top_n;
            if (match_top_n > 0) top_n = static_cast<std::size_t>(match_top_n);
            return cmd_match(match_gt, match_pred, match_video, match_algo, match_gamma, top_n);
        }
        if (baseline->parsed()) {
            return cmd_baseline(baseline_mode, baseline_train, baseline_videos, baseline_out);
        }
        if (synth->parsed()) {
            return cmd_synth(synth_config, synth_gt, synth_pred);
        }
        if (train->parsed()) {
            return cmd_train(train_gt, train_matcher, train_gamma, train_steps, train_step,
                             train_seed, train_proposals, train_init, train_report);
        }
        if (paper_demo->parsed()) {
            std::optional<double> gamma;
            if (demo_gamma_opt->count() > 0) gamma = demo_gamma;
            return cmd_paper_demo(gamma);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
