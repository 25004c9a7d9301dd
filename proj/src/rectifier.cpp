#include "rsom/rectifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsom {

std::vector<std::size_t> epoch_win_counts(std::span<const std::size_t> winners, std::size_t units) {
    std::vector<std::size_t> z(units, 0);
    for (std::size_t w : winners) {
        if (w >= units) throw std::invalid_argument("winner index out of range");
        ++z[w];
    }
    return z;
}

std::vector<double> neighborhood_activation(std::span<const std::size_t> z, std::span<const GridPos> positions,
                                            double eps, double sigma) {
    if (z.size() != positions.size()) throw std::invalid_argument("win counts and positions differ in length");
    std::vector<double> beta(z.size(), 0.0);
    for (std::size_t v = 0; v < z.size(); ++v) {
        if (z[v] == 0) continue;
        const double wins = static_cast<double>(z[v]);
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == v) continue;
            beta[j] += window(positions[j], positions[v], eps, sigma) * wins;
        }
    }
    return beta;
}

void update_excitation(ExcitationLedger& ledger, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("learning solidity must be positive");
    for (std::size_t j = 0; j < ledger.e.size(); ++j)
        ledger.e[j] += rho * (ledger.beta[j] + static_cast<double>(ledger.z[j]));
    ledger.rho = rho;
    std::fill(ledger.z.begin(), ledger.z.end(), 0);
    std::fill(ledger.beta.begin(), ledger.beta.end(), 0.0);
}

std::vector<double> normalize_excitation(std::span<const double> e) {
    std::vector<double> out(e.size(), 1.0);
    if (e.empty()) return out;
    const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    const double range = *hi - *lo;
    if (range <= 0.0) return out;
    for (std::size_t j = 0; j < e.size(); ++j) out[j] = (e[j] - *lo) / range;
    return out;
}

UnitSplit split_clusters(std::span<const double> e_norm, double theta) {
    UnitSplit split;
    for (std::size_t j = 0; j < e_norm.size(); ++j) (e_norm[j] >= theta ? split.salient : split.outlier).push_back(j);
    return split;
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double pos = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats cluster_distance_stats(std::span<const double> distances, double tau) {
    if (distances.empty()) throw std::invalid_argument("box-plot statistics need at least one distance");
    std::vector<double> sorted(distances.begin(), distances.end());
    std::sort(sorted.begin(), sorted.end());
    BoxStats stats;
    stats.q1 = quantile_sorted(sorted, 0.25);
    stats.q3 = quantile_sorted(sorted, 0.75);
    stats.iqr = stats.q3 - stats.q1;
    stats.upper_whisker = stats.q3 + tau * stats.iqr;
    return stats;
}

double whisker_threshold(std::span<const double> distances, double tau, WhiskerRule rule) {
    if (rule == WhiskerRule::Coefficient) return cluster_distance_stats(distances, tau).upper_whisker;
    if (distances.empty()) throw std::invalid_argument("box-plot statistics need at least one distance");
    std::vector<double> sorted(distances.begin(), distances.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, 0.75 + 0.25 * std::min(tau, 1.0));
}

std::vector<std::size_t> element_outliers(std::span<const std::size_t> assignment, std::span<const double> distances,
                                          std::span<const std::size_t> salient_units, double tau, WhiskerRule rule) {
    if (assignment.size() != distances.size())
        throw std::invalid_argument("assignment and distances differ in length");
    std::vector<std::size_t> flagged;
    for (std::size_t unit : salient_units) {
        std::vector<std::size_t> members;
        std::vector<double> member_dist;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (assignment[i] != unit) continue;
            members.push_back(i);
            member_dist.push_back(distances[i]);
        }
        if (members.empty()) continue;
        const double cutoff = whisker_threshold(member_dist, tau, rule);
        for (std::size_t n = 0; n < members.size(); ++n)
            if (member_dist[n] > cutoff) flagged.push_back(members[n]);
    }
    std::sort(flagged.begin(), flagged.end());
    return flagged;
}

ExcitationTracker::ExcitationTracker(std::span<const GridPos> positions)
    : positions_(positions.begin(), positions.end()), ledger_(positions.size()) {}

void ExcitationTracker::observe(const EpochTrace& epoch) {
    if (!(epoch.eps > 0.0)) throw std::invalid_argument("excitation needs a positive learning rate");
    ledger_.z = epoch_win_counts(epoch.winners, positions_.size());
    ledger_.beta = neighborhood_activation(ledger_.z, positions_, epoch.eps, epoch.sigma);
    update_excitation(ledger_, 1.0 / epoch.eps);
}

void RsomConfig::validate() const {
    som.validate();
    if (!(som.eps_end > 0.0)) throw std::invalid_argument("rectification needs eps_end > 0 (solidity is 1/eps)");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be finite and nonnegative");
}

std::vector<std::size_t> RectifiedClustering::discarded() const {
    std::vector<bool> dropped(assignment.size(), false);
    for (std::size_t i : element_outliers) dropped[i] = true;
    std::vector<bool> outlier_unit(map.units(), false);
    for (std::size_t j : outlier_units) outlier_unit[j] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (dropped[i] || outlier_unit[assignment[i]]) out.push_back(i);
    return out;
}

RectifiedClustering rectify(const Dataset& data, const RsomConfig& config) {
    config.validate();
    const auto positions = neuron_positions(config.som.rows, config.som.cols);
    ExcitationTracker tracker(positions);
    TrainResult trained = train(data, config.som, [&](std::size_t, const EpochTrace& epoch, const SomMap&) {
        tracker.observe(epoch);
    });

    const Assignment final_pass = assign_nearest(data, trained.map);
    RectifiedClustering out{.map = std::move(trained.map)};
    out.excitation = tracker.ledger().e;
    out.e_norm = normalize_excitation(out.excitation);
    auto split = split_clusters(out.e_norm, config.theta);
    out.salient_units = std::move(split.salient);
    out.outlier_units = std::move(split.outlier);
    out.assignment = final_pass.unit;
    out.distances = final_pass.distance;
    out.element_outliers = element_outliers(out.assignment, out.distances, out.salient_units, config.tau, config.whisker);

    std::vector<bool> flagged(data.size(), false);
    for (std::size_t i : out.element_outliers) flagged[i] = true;
    for (std::size_t j : out.salient_units) out.retained[j];
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto it = out.retained.find(out.assignment[i]);
        if (it != out.retained.end() && !flagged[i]) it->second.push_back(i);
    }
    return out;
}

}  // namespace rsom
