#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsom/dataset.hpp"

namespace rsom {

struct KMeansResult {
    std::vector<std::size_t> assignment;
    std::vector<double> centroids;  // k x D, row-major
    std::size_t iterations = 0;
    bool converged = false;
};

// Lloyd's algorithm seeded with k distinct instances. An emptied cluster is
// re-seeded at the instance farthest from its current centroid.
KMeansResult kmeans(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters = 100);

}  // namespace rsom
