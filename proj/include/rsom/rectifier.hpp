#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rsom/dataset.hpp"
#include "rsom/som.hpp"

namespace rsom {

// Per-unit bookkeeping carried through training.
struct ExcitationLedger {
    explicit ExcitationLedger(std::size_t units) : e(units, 0.0), z(units, 0), beta(units, 0.0) {}

    std::vector<double> e;          // cumulative excitation
    std::vector<std::size_t> z;     // wins in the current epoch
    std::vector<double> beta;       // neighbourhood activation in the current epoch
    double rho = 1.0;               // learning solidity used for the last update
};

std::vector<std::size_t> epoch_win_counts(std::span<const std::size_t> winners, std::size_t units);

// beta_j = sum over units v != j of h(n_j, n_v) * z_v.
std::vector<double> neighborhood_activation(std::span<const std::size_t> z, std::span<const GridPos> positions,
                                            double eps, double sigma);

// e_j += rho * (beta_j + z_j), then clears z and beta for the next epoch.
void update_excitation(ExcitationLedger& ledger, double rho);

// Min-max scaling to [0, 1]; a constant vector maps to all ones.
std::vector<double> normalize_excitation(std::span<const double> e);

struct UnitSplit {
    std::vector<std::size_t> salient;
    std::vector<std::size_t> outlier;
};

UnitSplit split_clusters(std::span<const double> e_norm, double theta);

struct BoxStats {
    double q1 = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    double upper_whisker = 0.0;
};

// Quantile of an ascending sample by linear interpolation at (n-1)*q.
double quantile_sorted(std::span<const double> sorted, double q);

BoxStats cluster_distance_stats(std::span<const double> distances, double tau);

enum class WhiskerRule {
    Coefficient,  // Q3 + tau * IQR
    Quantile,     // quantile at 0.75 + 0.25 * min(tau, 1)
};

double whisker_threshold(std::span<const double> distances, double tau, WhiskerRule rule);

// Members of salient units lying strictly beyond their unit's whisker.
// Returned in ascending instance order.
std::vector<std::size_t> element_outliers(std::span<const std::size_t> assignment, std::span<const double> distances,
                                          std::span<const std::size_t> salient_units, double tau,
                                          WhiskerRule rule = WhiskerRule::Coefficient);

// Drives a ledger from the per-epoch training trace: counts wins, computes
// neighbourhood activations with that epoch's window, and folds them into
// e with rho = 1 / eps.
class ExcitationTracker {
public:
    explicit ExcitationTracker(std::span<const GridPos> positions);

    void observe(const EpochTrace& epoch);

    const ExcitationLedger& ledger() const { return ledger_; }

private:
    std::vector<GridPos> positions_;
    ExcitationLedger ledger_;
};

struct RsomConfig {
    SomConfig som;
    double theta = 0.3;
    double tau = 0.4;
    WhiskerRule whisker = WhiskerRule::Coefficient;

    void validate() const;
};

struct RectifiedClustering {
    SomMap map;
    std::vector<double> excitation{};                // raw e after the last epoch
    std::vector<double> e_norm{};
    std::vector<std::size_t> salient_units{};
    std::vector<std::size_t> outlier_units{};
    std::vector<std::size_t> assignment{};           // final nearest unit per instance
    std::vector<double> distances{};                 // to the assigned unit's weight
    std::vector<std::size_t> element_outliers{};
    std::map<std::size_t, std::vector<std::size_t>> retained{};  // salient unit -> kept members

    // Members of outlier units followed by element outliers, ascending.
    std::vector<std::size_t> discarded() const;
};

// One training pass with excitation bookkeeping, then a single assignment
// pass against the final weights.
RectifiedClustering rectify(const Dataset& data, const RsomConfig& config);

}  // namespace rsom
