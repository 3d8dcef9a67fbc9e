/**
 * JSON file formats.
 *
 * Annotation document (ground truth and predictions share the schema):
 *   {"videos":[{"id": str, "duration": num,
 *               "segments":[{"start": num, "end": num,
 *                            "summary": str?, "confidence": num?}]}]}
 *
 * Report document:
 *   {"per_video":[{"id": str, <metric>: num, ...}],
 *    "aggregate":{<metric>: num, ...}}
 * with metric values on a 0-100 scale rounded to two decimals.
 */
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "segeval/segment.hpp"

namespace segeval {

enum class AnnotationKind { GroundTruth, Prediction };

/// Parses an annotation file and validates every video. Ground truth
/// additionally gets the sorted/non-overlapping check. Schema errors
/// name the offending video_id and field.
std::vector<VideoAnnotation> load_annotations(const std::filesystem::path& path,
                                              AnnotationKind kind);

void save_annotations(const std::filesystem::path& path,
                      const std::vector<VideoAnnotation>& videos);

/// Named metric values in report order. Values are on the 0-1 scale here;
/// serialization rescales to 0-100.
using MetricList = std::vector<std::pair<std::string, double>>;

struct Report {
    struct VideoRow {
        std::string id;
        MetricList metrics;
    };
    std::vector<VideoRow> per_video;
    MetricList aggregate;
};

void save_report(const std::filesystem::path& path, const Report& report);

/// 0-1 value -> 0-100 scale rounded to two decimals, as reported.
double report_scale(double value);

}  // namespace segeval
