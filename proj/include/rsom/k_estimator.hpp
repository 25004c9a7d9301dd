#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rsom/dataset.hpp"

namespace rsom {

struct EstimatorConfig {
    double nu = 0.4;
    bool center = true;
};

// Eigenvalues of the sample covariance (1/(M-1)), descending. Values below
// 1e-12 of the largest are reported as exactly zero.
std::vector<double> covariance_spectrum(const Dataset& data, bool center = true);

// Smallest m whose leading eigenvalues explain at least nu of the total.
std::size_t components_for_variance(std::span<const double> eigenvalues_desc, double nu);

std::size_t estimate_k(const Dataset& data, double nu, bool center = true);
inline std::size_t estimate_k(const Dataset& data, const EstimatorConfig& config) {
    return estimate_k(data, config.nu, config.center);
}

struct GridShape {
    int rows = 1;
    int cols = 1;
    friend bool operator==(const GridShape&, const GridShape&) = default;
};

// rows = floor(sqrt(K)), cols = ceil(K / rows).
GridShape grid_shape(std::size_t k);

}  // namespace rsom
