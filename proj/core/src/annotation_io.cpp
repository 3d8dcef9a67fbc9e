#include "segeval/annotation_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace segeval {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& video_id, const std::string& field,
                               const std::string& what) {
    throw std::runtime_error("annotation schema error in video '" + video_id + "', field '" +
                             field + "': " + what);
}

double require_number(const json& obj, const char* field, const std::string& video_id) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_number()) {
        schema_error(video_id, field, "missing or not a number");
    }
    return it->get<double>();
}

}  // namespace

std::vector<VideoAnnotation> load_annotations(const std::filesystem::path& path,
                                              AnnotationKind kind) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open annotation file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("invalid JSON in " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("videos") || !doc["videos"].is_array()) {
        throw std::runtime_error("annotation file " + path.string() +
                                 " must be an object with a \"videos\" array");
    }

    std::vector<VideoAnnotation> videos;
    videos.reserve(doc["videos"].size());
    for (const auto& v : doc["videos"]) {
        VideoAnnotation video;
        if (!v.contains("id") || !v["id"].is_string()) {
            schema_error("<unknown>", "id", "missing or not a string");
        }
        video.video_id = v["id"].get<std::string>();
        video.duration = require_number(v, "duration", video.video_id);
        if (v.contains("segments")) {
            if (!v["segments"].is_array()) {
                schema_error(video.video_id, "segments", "not an array");
            }
            for (const auto& s : v["segments"]) {
                Segment seg;
                seg.start = require_number(s, "start", video.video_id);
                seg.end = require_number(s, "end", video.video_id);
                if (s.contains("summary")) {
                    if (!s["summary"].is_string()) {
                        schema_error(video.video_id, "summary", "not a string");
                    }
                    seg.summary = s["summary"].get<std::string>();
                }
                if (s.contains("confidence")) {
                    if (!s["confidence"].is_number()) {
                        schema_error(video.video_id, "confidence", "not a number");
                    }
                    seg.confidence = s["confidence"].get<double>();
                }
                video.segments.push_back(std::move(seg));
            }
        }
        if (kind == AnnotationKind::GroundTruth) {
            validate_ground_truth(video);
        } else {
            validate_annotation(video);
        }
        videos.push_back(std::move(video));
    }
    return videos;
}

void save_annotations(const std::filesystem::path& path,
                      const std::vector<VideoAnnotation>& videos) {
    json doc;
    doc["videos"] = json::array();
    for (const auto& video : videos) {
        json v;
        v["id"] = video.video_id;
        v["duration"] = video.duration;
        v["segments"] = json::array();
        for (const auto& seg : video.segments) {
            json s;
            s["start"] = seg.start;
            s["end"] = seg.end;
            if (seg.summary) s["summary"] = *seg.summary;
            if (seg.confidence) s["confidence"] = *seg.confidence;
            v["segments"].push_back(std::move(s));
        }
        doc["videos"].push_back(std::move(v));
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write annotation file: " + path.string());
    }
    out << doc.dump(2) << '\n';
}

double report_scale(double value) {
    return std::round(value * 100.0 * 100.0) / 100.0;
}

void save_report(const std::filesystem::path& path, const Report& report) {
    json doc;
    doc["per_video"] = json::array();
    for (const auto& row : report.per_video) {
        json r;
        r["id"] = row.id;
        for (const auto& [name, value] : row.metrics) {
            r[name] = report_scale(value);
        }
        doc["per_video"].push_back(std::move(r));
    }
    doc["aggregate"] = json::object();
    for (const auto& [name, value] : report.aggregate) {
        doc["aggregate"][name] = report_scale(value);
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write report file: " + path.string());
    }
    out << doc.dump(2) << '\n';
}

}  // namespace segeval
