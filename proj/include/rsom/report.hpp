#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsom/pyramid_fusion.hpp"
#include "rsom/rectifier.hpp"
#include "rsom/synth.hpp"

namespace rsom {

struct EvalReport {
    double ari = 0.0;
    double purity = 0.0;
    double outlier_precision = 1.0;
    double outlier_recall = 1.0;
    std::size_t retained_count = 0;
    std::size_t discarded_count = 0;
};

// Scores a rectification against ground truth. Instances labelled -1 are the
// injected outliers; ARI and purity are computed over retained instances.
EvalReport evaluate(const RectifiedClustering& result, const std::vector<int>& truth);

// The subset of a report the evaluator needs.
struct ReportView {
    std::vector<std::size_t> assignment;
    std::vector<std::size_t> outlier_units;
    std::vector<std::size_t> element_outliers;
};

EvalReport evaluate(const ReportView& report, const std::vector<int>& truth);

nlohmann::ordered_json config_to_json(const RsomConfig& config);
nlohmann::ordered_json report_to_json(const RectifiedClustering& result, const RsomConfig& config,
                                      const std::optional<EvalReport>& eval = std::nullopt);
nlohmann::ordered_json eval_to_json(const EvalReport& eval);

std::string dump_json(const nlohmann::ordered_json& doc);

void write_report(const RectifiedClustering& result, const RsomConfig& config,
                  const std::optional<EvalReport>& eval, const std::string& path);

ReportView parse_report(const nlohmann::json& doc);
ReportView read_report(const std::string& path);

PyramidConfidences parse_pyramid(const nlohmann::json& doc);
PyramidConfidences read_pyramid(const std::string& path);

SynthSpec parse_synth_spec(const nlohmann::json& doc);
SynthSpec read_synth_spec(const std::string& path);

// Reads a whole file as JSON; IoError / ParseError carry the path.
nlohmann::json read_json_file(const std::string& path);

}  // namespace rsom
