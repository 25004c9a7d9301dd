#include "rsom/som.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rsom/random.hpp"

namespace rsom {

namespace {

// Mixed into the seed so presentation order is independent of initialization.
constexpr std::uint64_t kShuffleStream = 0x9e3779b97f4a7c15ULL;

void check_dim(std::span<const double> x, const SomMap& map) {
    if (x.size() != map.dim())
        throw std::invalid_argument("instance dimension " + std::to_string(x.size()) + " does not match map dimension " +
                                    std::to_string(map.dim()));
}

// K x K table of window values for one epoch; row = winner.
std::vector<double> window_table(const std::vector<GridPos>& positions, double eps, double sigma) {
    const std::size_t k = positions.size();
    std::vector<double> table(k * k);
    for (std::size_t v = 0; v < k; ++v)
        for (std::size_t j = 0; j < k; ++j) table[v * k + j] = window(positions[j], positions[v], eps, sigma);
    return table;
}

void apply_step(SomMap& map, std::span<const double> x, std::span<const double> h) {
    for (std::size_t j = 0; j < map.units(); ++j) {
        const double step = h[j];
        if (step == 0.0) continue;
        auto w = map.weight(j);
        for (std::size_t d = 0; d < w.size(); ++d) w[d] += step * (x[d] - w[d]);
    }
}

}  // namespace

void SomConfig::validate() const {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid rows and cols must be positive");
    if (units() < 2) throw std::invalid_argument("map needs at least 2 units");
    if (epochs < 1) throw std::invalid_argument("epochs must be at least 1");
    if (!(eps_start >= 0.0 && eps_start <= 1.0) || !(eps_end >= 0.0 && eps_end <= 1.0))
        throw std::invalid_argument("learning rates must lie in [0, 1]");
    if (eps_start < eps_end) throw std::invalid_argument("eps_start must be >= eps_end");
    if (!(sigma_end > 0.0) || !std::isfinite(sigma_start))
        throw std::invalid_argument("neighbourhood widths must be positive and finite");
    if (sigma_start < sigma_end) throw std::invalid_argument("sigma_start must be >= sigma_end");
}

std::vector<GridPos> neuron_positions(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid rows and cols must be positive");
    std::vector<GridPos> positions;
    positions.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) positions.push_back({r, c});
    return positions;
}

double decay(double start, double end, std::size_t epoch, std::size_t epochs) {
    if (epochs <= 1 || epoch == 0 || start == end) return start;
    if (epoch >= epochs - 1) return end;
    const double t = static_cast<double>(epoch) / static_cast<double>(epochs - 1);
    return start * std::pow(end / start, t);
}

double grid_distance_sq(GridPos a, GridPos b) {
    const double dr = a.row - b.row;
    const double dc = a.col - b.col;
    return dr * dr + dc * dc;
}

double window(GridPos unit, GridPos winner, double eps, double sigma) {
    return eps * std::exp(-grid_distance_sq(unit, winner) / (2.0 * sigma * sigma));
}

SomMap::SomMap(int rows, int cols, std::size_t dim, std::vector<double> weights)
    : rows_(rows), cols_(cols), dim_(dim), positions_(neuron_positions(rows, cols)), weights_(std::move(weights)) {
    if (dim_ == 0) throw std::invalid_argument("map dimension must be at least 1");
    if (weights_.size() != positions_.size() * dim_)
        throw std::invalid_argument("weight buffer does not match grid size and dimension");
}

std::size_t find_winner(std::span<const double> x, const SomMap& map) {
    check_dim(x, map);
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < map.units(); ++j) {
        const double d = squared_distance(x, map.weight(j));
        if (d < best_dist) {
            best_dist = d;
            best = j;
        }
    }
    return best;
}

void update_weights(SomMap& map, std::span<const double> x, std::size_t winner, double eps, double sigma) {
    check_dim(x, map);
    if (winner >= map.units()) throw std::invalid_argument("winner index out of range");
    std::vector<double> h(map.units());
    for (std::size_t j = 0; j < map.units(); ++j) h[j] = window(map.position(j), map.position(winner), eps, sigma);
    apply_step(map, x, h);
}

std::vector<double> init_weights(const Dataset& data, std::size_t units, std::uint64_t seed) {
    if (units < 2) throw std::invalid_argument("map needs at least 2 units");
    const std::size_t m = data.size();
    const std::size_t dim = data.dim();
    Rng rng(seed);
    std::vector<double> weights;
    weights.reserve(units * dim);

    const auto picks = rng.sample_without_replacement(m, std::min(m, units));
    for (std::size_t i : picks) {
        auto x = data.row(i);
        weights.insert(weights.end(), x.begin(), x.end());
    }
    if (m >= units) return weights;

    std::vector<double> lo(data.row(0).begin(), data.row(0).end());
    std::vector<double> hi = lo;
    for (std::size_t i = 1; i < m; ++i) {
        auto x = data.row(i);
        for (std::size_t d = 0; d < dim; ++d) {
            lo[d] = std::min(lo[d], x[d]);
            hi[d] = std::max(hi[d], x[d]);
        }
    }
    for (std::size_t j = m; j < units; ++j)
        for (std::size_t d = 0; d < dim; ++d) weights.push_back(rng.uniform(lo[d], hi[d]));
    return weights;
}

TrainResult train(const Dataset& data, const SomConfig& config, const EpochObserver& observer) {
    config.validate();
    const std::size_t m = data.size();
    SomMap map(config.rows, config.cols, data.dim(), init_weights(data, config.units(), config.seed));

    Rng order_rng(config.seed ^ kShuffleStream);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});

    std::vector<EpochTrace> trace;
    trace.reserve(config.epochs);
    const std::size_t k = map.units();
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        EpochTrace record;
        record.eps = decay(config.eps_start, config.eps_end, epoch, config.epochs);
        record.sigma = decay(config.sigma_start, config.sigma_end, epoch, config.epochs);
        record.winners.assign(m, 0);

        const auto table = window_table(map.positions(), record.eps, record.sigma);
        order_rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t i : order) {
            auto x = data.row(i);
            const std::size_t winner = find_winner(x, map);
            record.winners[i] = winner;
            apply_step(map, x, std::span<const double>(table).subspan(winner * k, k));
        }
        if (observer) observer(epoch, record, map);
        trace.push_back(std::move(record));
    }
    return {std::move(map), std::move(trace)};
}

Assignment assign_nearest(const Dataset& data, const SomMap& map) {
    Assignment out;
    out.unit.resize(data.size());
    out.distance.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto x = data.row(i);
        const std::size_t j = find_winner(x, map);
        out.unit[i] = j;
        out.distance[i] = std::sqrt(squared_distance(x, map.weight(j)));
    }
    return out;
}

}  // namespace rsom
