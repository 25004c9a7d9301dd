#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rsom/dataset.hpp"

namespace rsom {

struct GridPos {
    int row = 0;
    int col = 0;
    friend bool operator==(const GridPos&, const GridPos&) = default;
};

struct SomConfig {
    int rows = 3;
    int cols = 3;
    std::size_t epochs = 20;
    double eps_start = 0.5;
    double eps_end = 0.01;
    double sigma_start = 1.5;
    double sigma_end = 0.5;
    std::uint64_t seed = 1;

    std::size_t units() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }

    // Throws std::invalid_argument. A zero learning rate is accepted here
    // (it freezes the map); the rectifier additionally requires eps_end > 0.
    void validate() const;
};

// Row-major lattice coordinates; unit j sits at (j / cols, j % cols).
std::vector<GridPos> neuron_positions(int rows, int cols);

// Geometric interpolation start * (end/start)^(epoch/(epochs-1)).
double decay(double start, double end, std::size_t epoch, std::size_t epochs);

double grid_distance_sq(GridPos a, GridPos b);

// Gaussian neighbourhood window eps * exp(-|a - b|^2 / (2 sigma^2)).
double window(GridPos unit, GridPos winner, double eps, double sigma);

class SomMap {
public:
    SomMap(int rows, int cols, std::size_t dim, std::vector<double> weights);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t units() const { return positions_.size(); }
    std::size_t dim() const { return dim_; }

    const std::vector<GridPos>& positions() const { return positions_; }
    GridPos position(std::size_t j) const { return positions_[j]; }

    std::span<const double> weight(std::size_t j) const { return {weights_.data() + j * dim_, dim_}; }
    std::span<double> weight(std::size_t j) { return {weights_.data() + j * dim_, dim_}; }
    const std::vector<double>& weights() const { return weights_; }

    friend bool operator==(const SomMap&, const SomMap&) = default;

private:
    int rows_;
    int cols_;
    std::size_t dim_;
    std::vector<GridPos> positions_;
    std::vector<double> weights_;
};

// Best-matching unit; ties go to the lowest index.
std::size_t find_winner(std::span<const double> x, const SomMap& map);

// Delta rule applied to every unit: w_j += h(n_j, n_winner) * (x - w_j).
void update_weights(SomMap& map, std::span<const double> x, std::size_t winner, double eps, double sigma);

// K initial weight vectors (row-major). Draws K distinct instances when
// M >= K, otherwise takes every instance and fills the rest uniformly inside
// the data's bounding box.
std::vector<double> init_weights(const Dataset& data, std::size_t units, std::uint64_t seed);

struct EpochTrace {
    double eps = 0.0;
    double sigma = 0.0;
    std::vector<std::size_t> winners;  // indexed by instance, not presentation order
};

struct TrainResult {
    SomMap map;
    std::vector<EpochTrace> trace;
};

using EpochObserver = std::function<void(std::size_t epoch, const EpochTrace&, const SomMap&)>;

// Online training: epochs x M single-instance updates in a seeded shuffled
// order. The observer, if set, runs after each epoch.
TrainResult train(const Dataset& data, const SomConfig& config, const EpochObserver& observer = {});

struct Assignment {
    std::vector<std::size_t> unit;
    std::vector<double> distance;  // Euclidean, to the assigned unit's weight
};

Assignment assign_nearest(const Dataset& data, const SomMap& map);

}  // namespace rsom
