#include "rsom/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "rsom/errors.hpp"
#include "rsom/metrics.hpp"

namespace rsom {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const char* whisker_name(WhiskerRule rule) {
    return rule == WhiskerRule::Coefficient ? "coefficient" : "quantile";
}

std::vector<int> retained_labels(const std::vector<std::size_t>& assignment, const std::vector<bool>& dropped,
                                 const std::vector<int>& truth, std::vector<int>& truth_out) {
    std::vector<int> predicted;
    truth_out.clear();
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (dropped[i]) continue;
        predicted.push_back(static_cast<int>(assignment[i]));
        truth_out.push_back(truth[i]);
    }
    return predicted;
}

template <class T>
T field(const json& doc, const char* key, const std::string& context) {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(context + ": missing key \"" + key + "\"");
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(context + ": bad value for \"" + key + "\": " + e.what());
    }
}

}  // namespace

EvalReport evaluate(const ReportView& report, const std::vector<int>& truth) {
    const std::size_t m = report.assignment.size();
    if (truth.size() != m)
        throw std::invalid_argument("label count " + std::to_string(truth.size()) + " does not match report size " +
                                    std::to_string(m));
    std::size_t max_unit = 0;
    for (std::size_t u : report.assignment) max_unit = std::max(max_unit, u);
    for (std::size_t u : report.outlier_units) max_unit = std::max(max_unit, u);
    std::vector<bool> outlier_unit(max_unit + 1, false);
    for (std::size_t u : report.outlier_units) outlier_unit[u] = true;

    std::vector<bool> dropped(m, false);
    for (std::size_t i : report.element_outliers) {
        if (i >= m) throw std::invalid_argument("element outlier index out of range");
        dropped[i] = true;
    }
    std::vector<std::size_t> flagged;
    std::vector<std::size_t> injected;
    for (std::size_t i = 0; i < m; ++i) {
        if (outlier_unit[report.assignment[i]]) dropped[i] = true;
        if (dropped[i]) flagged.push_back(i);
        if (truth[i] == kOutlierLabel) injected.push_back(i);
    }

    EvalReport eval;
    std::vector<int> kept_truth;
    const auto kept_pred = retained_labels(report.assignment, dropped, truth, kept_truth);
    eval.ari = kept_pred.empty() ? 1.0 : adjusted_rand_index(kept_pred, kept_truth);
    eval.purity = purity(kept_pred, kept_truth);
    const auto pr = outlier_pr(flagged, injected, m);
    eval.outlier_precision = pr.precision;
    eval.outlier_recall = pr.recall;
    eval.retained_count = kept_pred.size();
    eval.discarded_count = flagged.size();
    return eval;
}

EvalReport evaluate(const RectifiedClustering& result, const std::vector<int>& truth) {
    return evaluate(ReportView{result.assignment, result.outlier_units, result.element_outliers}, truth);
}

ordered_json config_to_json(const RsomConfig& config) {
    ordered_json doc;
    doc["rows"] = config.som.rows;
    doc["cols"] = config.som.cols;
    doc["epochs"] = config.som.epochs;
    doc["eps_start"] = config.som.eps_start;
    doc["eps_end"] = config.som.eps_end;
    doc["sigma_start"] = config.som.sigma_start;
    doc["sigma_end"] = config.som.sigma_end;
    doc["seed"] = config.som.seed;
    doc["theta"] = config.theta;
    doc["tau"] = config.tau;
    doc["whisker"] = whisker_name(config.whisker);
    return doc;
}

ordered_json eval_to_json(const EvalReport& eval) {
    ordered_json doc;
    doc["ari"] = eval.ari;
    doc["purity"] = eval.purity;
    doc["outlier_precision"] = eval.outlier_precision;
    doc["outlier_recall"] = eval.outlier_recall;
    doc["retained_count"] = eval.retained_count;
    doc["discarded_count"] = eval.discarded_count;
    return doc;
}

ordered_json report_to_json(const RectifiedClustering& result, const RsomConfig& config,
                            const std::optional<EvalReport>& eval) {
    ordered_json doc;
    doc["config"] = config_to_json(config);
    doc["e_norm"] = result.e_norm;
    doc["salient_units"] = result.salient_units;
    doc["outlier_units"] = result.outlier_units;
    doc["assignment"] = result.assignment;
    doc["element_outliers"] = result.element_outliers;
    ordered_json retained = ordered_json::object();
    for (const auto& [unit, members] : result.retained) retained[std::to_string(unit)] = members;
    doc["retained"] = std::move(retained);
    ordered_json weights = ordered_json::array();
    for (std::size_t j = 0; j < result.map.units(); ++j) {
        auto w = result.map.weight(j);
        weights.push_back(std::vector<double>(w.begin(), w.end()));
    }
    doc["weights"] = std::move(weights);
    if (eval) doc["eval"] = eval_to_json(*eval);
    return doc;
}

std::string dump_json(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

void write_report(const RectifiedClustering& result, const RsomConfig& config, const std::optional<EvalReport>& eval,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << dump_json(report_to_json(result, config, eval));
    if (!out) throw IoError("write to '" + path + "' failed");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

ReportView parse_report(const json& doc) {
    const std::string ctx = "report";
    ReportView view;
    view.assignment = field<std::vector<std::size_t>>(doc, "assignment", ctx);
    view.outlier_units = field<std::vector<std::size_t>>(doc, "outlier_units", ctx);
    view.element_outliers = field<std::vector<std::size_t>>(doc, "element_outliers", ctx);
    return view;
}

ReportView read_report(const std::string& path) {
    return parse_report(read_json_file(path));
}

PyramidConfidences parse_pyramid(const json& doc) {
    const auto levels = field<std::vector<json>>(doc, "levels", "pyramid");
    if (levels.size() != 3) throw ParseError("pyramid: expected 3 levels, found " + std::to_string(levels.size()));
    PyramidConfidences pyramid;
    std::array<bool, 3> seen{};
    for (const auto& level : levels) {
        const int l = field<int>(level, "level", "pyramid level");
        if (l < 1 || l > 3) throw ParseError("pyramid: level must be 1, 2 or 3, got " + std::to_string(l));
        if (seen[static_cast<std::size_t>(l - 1)]) throw ParseError("pyramid: level " + std::to_string(l) + " repeated");
        seen[static_cast<std::size_t>(l - 1)] = true;
        for (const auto& grid : field<std::vector<json>>(level, "grids", "pyramid level")) {
            const auto center = field<std::vector<double>>(grid, "center", "pyramid grid");
            if (center.size() != 2) throw ParseError("pyramid grid: center must have 2 coordinates");
            GridConfidence g;
            g.center = {center[0], center[1]};
            g.conf = field<std::vector<double>>(grid, "conf", "pyramid grid");
            pyramid.levels[static_cast<std::size_t>(l - 1)].push_back(std::move(g));
        }
    }
    try {
        pyramid.classes();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("pyramid: ") + e.what());
    }
    return pyramid;
}

PyramidConfidences read_pyramid(const std::string& path) {
    return parse_pyramid(read_json_file(path));
}

SynthSpec parse_synth_spec(const json& doc) {
    SynthSpec spec;
    for (const auto& blob : field<std::vector<json>>(doc, "blobs", "synth spec")) {
        BlobSpec b;
        b.mean = field<std::vector<double>>(blob, "mean", "blob");
        b.stddev = field<double>(blob, "stddev", "blob");
        b.count = field<std::size_t>(blob, "count", "blob");
        spec.blobs.push_back(std::move(b));
    }
    if (doc.contains("outliers")) {
        const auto& out = doc.at("outliers");
        spec.outliers = field<std::size_t>(out, "count", "outliers");
        spec.box_min = field<std::vector<double>>(out, "min", "outliers");
        spec.box_max = field<std::vector<double>>(out, "max", "outliers");
    } else if (!spec.blobs.empty()) {
        spec.box_min = spec.box_max = spec.blobs.front().mean;
        for (const auto& b : spec.blobs)
            for (std::size_t d = 0; d < std::min(b.mean.size(), spec.box_min.size()); ++d) {
                spec.box_min[d] = std::min(spec.box_min[d], b.mean[d]);
                spec.box_max[d] = std::max(spec.box_max[d], b.mean[d]);
            }
    }
    if (doc.contains("seed")) spec.seed = field<std::uint64_t>(doc, "seed", "synth spec");
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("synth spec: ") + e.what());
    }
    return spec;
}

SynthSpec read_synth_spec(const std::string& path) {
    return parse_synth_spec(read_json_file(path));
}

}  // namespace rsom
