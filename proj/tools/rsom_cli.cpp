// Command-line front end: synthetic data, K estimation, rectification,
// baselines, evaluation and pyramid fusion.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsom/csv.hpp"
#include "rsom/errors.hpp"
#include "rsom/k_estimator.hpp"
#include "rsom/kmeans.hpp"
#include "rsom/metrics.hpp"
#include "rsom/pyramid_fusion.hpp"
#include "rsom/rectifier.hpp"
#include "rsom/report.hpp"
#include "rsom/synth.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Plain SOM is rectification with nothing discarded.
constexpr double kPlainTheta = 0.0;
constexpr double kPlainTau = 1e9;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Range {
    double start;
    double end;
};

Range parse_range(const std::string& text, const std::string& flag) {
    auto parse = [&](std::string_view s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw UsageError(flag + ": expected START:END or VALUE, got '" + text + "'");
        return v;
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const double v = parse(text);
        return {v, v};
    }
    return {parse(std::string_view(text).substr(0, colon)), parse(std::string_view(text).substr(colon + 1))};
}

rsom::LabelColumn label_column(const std::string& name) {
    return name == "last" ? rsom::LabelColumn::Last : rsom::LabelColumn::None;
}

struct MapOptions {
    std::string input;
    std::string label_col = "none";
    int rows = 0;
    int cols = 0;
    bool auto_k = false;
    double nu = 0.4;
    std::size_t epochs = 30;
    std::string eps = "0.5:0.01";
    std::string sigma;
    double theta = 0.3;
    double tau = 0.4;
    std::string whisker = "coefficient";
    std::uint64_t seed = 1;
    std::string report;
};

void add_map_options(CLI::App* cmd, MapOptions& opt, bool rectifying) {
    cmd->add_option("--in", opt.input, "Input CSV")->required();
    cmd->add_option("--label-col", opt.label_col, "Label column")->check(CLI::IsMember({"none", "last"}));
    auto* rows = cmd->add_option("--rows", opt.rows, "Grid rows")->check(CLI::PositiveNumber);
    auto* cols = cmd->add_option("--cols", opt.cols, "Grid cols")->check(CLI::PositiveNumber);
    auto* autok = cmd->add_flag("--auto-k", opt.auto_k, "Size the grid from PCA explained variance");
    cmd->add_option("--nu", opt.nu, "Variance fraction for --auto-k");
    rows->needs(cols);
    cols->needs(rows);
    autok->excludes(rows)->excludes(cols);
    cmd->add_option("--epochs", opt.epochs, "Training epochs");
    cmd->add_option("--eps", opt.eps, "Learning rate START:END");
    cmd->add_option("--sigma", opt.sigma, "Neighbourhood width START:END (default max(rows,cols)/2 : 0.5)");
    if (rectifying) {
        cmd->add_option("--theta", opt.theta, "Salient-unit threshold in [0,1]");
        cmd->add_option("--tau", opt.tau, "Whisker coefficient");
        cmd->add_option("--whisker", opt.whisker, "Whisker rule")->check(CLI::IsMember({"coefficient", "quantile"}));
    }
    cmd->add_option("--seed", opt.seed, "Random seed");
    cmd->add_option("--report", opt.report, "Write the JSON report here instead of stdout");
}

rsom::RsomConfig build_config(const MapOptions& opt, const rsom::Dataset& data) {
    rsom::RsomConfig config;
    if (opt.auto_k) {
        if (data.size() < 2) throw UsageError("--auto-k needs at least 2 instances");
        const std::size_t k = std::max<std::size_t>(2, rsom::estimate_k(data, opt.nu));
        const auto shape = rsom::grid_shape(k);
        config.som.rows = shape.rows;
        config.som.cols = shape.cols;
    } else if (opt.rows > 0) {
        config.som.rows = opt.rows;
        config.som.cols = opt.cols;
    } else {
        throw UsageError("give either --rows/--cols or --auto-k");
    }
    config.som.epochs = opt.epochs;
    const Range eps = parse_range(opt.eps, "--eps");
    config.som.eps_start = eps.start;
    config.som.eps_end = eps.end;
    if (opt.sigma.empty()) {
        config.som.sigma_start = std::max(0.5, std::max(config.som.rows, config.som.cols) / 2.0);
        config.som.sigma_end = 0.5;
    } else {
        const Range sigma = parse_range(opt.sigma, "--sigma");
        config.som.sigma_start = sigma.start;
        config.som.sigma_end = sigma.end;
    }
    config.som.seed = opt.seed;
    config.theta = opt.theta;
    config.tau = opt.tau;
    config.whisker = opt.whisker == "quantile" ? rsom::WhiskerRule::Quantile : rsom::WhiskerRule::Coefficient;
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return config;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rsom::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw rsom::IoError("write to '" + path + "' failed");
}

int run_rectify(const MapOptions& opt) {
    const auto data = rsom::load_csv(opt.input, label_column(opt.label_col));
    const auto config = build_config(opt, data);
    const auto result = rsom::rectify(data, config);
    std::optional<rsom::EvalReport> eval;
    if (data.has_labels()) eval = rsom::evaluate(result, data.labels());
    emit(rsom::dump_json(rsom::report_to_json(result, config, eval)), opt.report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rectifying self-organizing maps: clustering with outlier removal"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Generate a labelled Gaussian-blob dataset with uniform outliers");
    synth->add_option("--spec", spec_path, "JSON dataset spec")->required();
    synth->add_option("--out", synth_out, "Output CSV (label in last column)")->required();

    std::string est_in;
    std::string est_labels = "none";
    double est_nu = 0.4;
    auto* estimate = app.add_subcommand("estimate-k", "Estimate the cluster count from PCA explained variance");
    estimate->add_option("--in", est_in, "Input CSV")->required();
    estimate->add_option("--label-col", est_labels, "Label column")->check(CLI::IsMember({"none", "last"}));
    estimate->add_option("--nu", est_nu, "Variance fraction in (0,1]");

    MapOptions rect_opt;
    auto* rect = app.add_subcommand("rectify", "Train a rectifying SOM and report clusters and outliers");
    add_map_options(rect, rect_opt, true);

    MapOptions train_opt;
    auto* train = app.add_subcommand("train", "Plain SOM (rectify with theta=0, tau=1e9)");
    add_map_options(train, train_opt, false);

    std::string km_in;
    std::string km_labels = "none";
    std::size_t km_k = 2;
    std::uint64_t km_seed = 1;
    std::size_t km_iters = 100;
    auto* km = app.add_subcommand("kmeans", "Lloyd k-means baseline");
    km->add_option("--in", km_in, "Input CSV")->required();
    km->add_option("--label-col", km_labels, "Label column")->check(CLI::IsMember({"none", "last"}));
    km->add_option("--k", km_k, "Cluster count")->required()->check(CLI::PositiveNumber);
    km->add_option("--seed", km_seed, "Random seed");
    km->add_option("--max-iters", km_iters, "Iteration cap");

    std::string eval_report;
    std::string eval_labels;
    auto* eval = app.add_subcommand("eval", "Score a report against ground-truth labels (-1 marks outliers)");
    eval->add_option("--report", eval_report, "JSON report from rectify/train")->required();
    eval->add_option("--labels", eval_labels, "CSV whose last column holds the labels")->required();

    std::string pyramid_path;
    double sigma_s = 0.25;
    std::vector<double> center{0.5, 0.5};
    auto* fuse = app.add_subcommand("fuse", "Fuse spatial-pyramid confidences into an image label");
    fuse->add_option("--pyramid", pyramid_path, "Pyramid JSON")->required();
    fuse->add_option("--sigma-s", sigma_s, "Spatial Gaussian width")->check(CLI::PositiveNumber);
    fuse->add_option("--center", center, "Image center x y")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*synth) {
            rsom::save_csv(synth_out, rsom::synthesize(rsom::read_synth_spec(spec_path)));
        } else if (*estimate) {
            if (!(est_nu > 0.0 && est_nu <= 1.0)) throw UsageError("--nu must lie in (0, 1]");
            const auto data = rsom::load_csv(est_in, label_column(est_labels));
            if (data.size() < 2) throw rsom::ParseError(est_in + ": estimate-k needs at least 2 instances");
            const std::size_t k = rsom::estimate_k(data, est_nu);
            const auto shape = rsom::grid_shape(k);
            nlohmann::ordered_json out;
            out["k"] = k;
            out["rows"] = shape.rows;
            out["cols"] = shape.cols;
            std::cout << out.dump() << "\n";
        } else if (*rect) {
            return run_rectify(rect_opt);
        } else if (*train) {
            train_opt.theta = kPlainTheta;
            train_opt.tau = kPlainTau;
            return run_rectify(train_opt);
        } else if (*km) {
            const auto data = rsom::load_csv(km_in, label_column(km_labels));
            if (km_k > data.size()) throw UsageError("--k exceeds the number of instances");
            const auto result = rsom::kmeans(data, km_k, km_seed, km_iters);
            nlohmann::ordered_json out;
            out["k"] = km_k;
            out["seed"] = km_seed;
            out["iterations"] = result.iterations;
            out["converged"] = result.converged;
            out["assignment"] = result.assignment;
            nlohmann::ordered_json centroids = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < km_k; ++c)
                centroids.push_back(std::vector<double>(result.centroids.begin() + c * data.dim(),
                                                        result.centroids.begin() + (c + 1) * data.dim()));
            out["centroids"] = std::move(centroids);
            if (data.has_labels()) {
                std::vector<int> predicted(result.assignment.begin(), result.assignment.end());
                out["ari"] = rsom::adjusted_rand_index(predicted, data.labels());
            }
            std::cout << rsom::dump_json(out);
        } else if (*eval) {
            const auto report = rsom::read_report(eval_report);
            const auto truth = rsom::load_labels(eval_labels);
            if (truth.size() != report.assignment.size())
                throw rsom::ParseError(eval_labels + ": " + std::to_string(truth.size()) + " labels for " +
                                       std::to_string(report.assignment.size()) + " instances");
            std::cout << rsom::dump_json(rsom::eval_to_json(rsom::evaluate(report, truth)));
        } else if (*fuse) {
            rsom::FusionConfig config;
            config.sigma_s = sigma_s;
            config.image_center = {center[0], center[1]};
            const auto scores = rsom::fuse(rsom::read_pyramid(pyramid_path), config);
            nlohmann::ordered_json out;
            out["scores"] = scores;
            out["label"] = rsom::classify(scores);
            std::cout << out.dump() << "\n";
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
