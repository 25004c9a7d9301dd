#include "rsom/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "rsom/random.hpp"

namespace rsom {

KMeansResult kmeans(const Dataset& data, std::size_t k, std::uint64_t seed, std::size_t max_iters) {
    const std::size_t m = data.size();
    const std::size_t dim = data.dim();
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (k > m) throw std::invalid_argument("k exceeds the number of instances");

    KMeansResult result;
    Rng rng(seed);
    for (std::size_t i : rng.sample_without_replacement(m, k)) {
        auto x = data.row(i);
        result.centroids.insert(result.centroids.end(), x.begin(), x.end());
    }
    auto centroid = [&](std::size_t c) { return std::span<double>(result.centroids).subspan(c * dim, dim); };

    result.assignment.assign(m, k);  // sentinel: nothing assigned yet
    std::vector<double> sums(k * dim);
    std::vector<std::size_t> counts(k);
    std::vector<double> dist(m);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(data.row(i), centroid(c));
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            dist[i] = best_d;
            if (result.assignment[i] != best) {
                result.assignment[i] = best;
                changed = true;
            }
        }
        result.iterations = iter + 1;
        if (!changed) {
            result.converged = true;
            break;
        }

        std::fill(sums.begin(), sums.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t c = result.assignment[i];
            ++counts[c];
            auto x = data.row(i);
            for (std::size_t d = 0; d < dim; ++d) sums[c * dim + d] += x[d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            auto target = centroid(c);
            if (counts[c] > 0) {
                for (std::size_t d = 0; d < dim; ++d) target[d] = sums[c * dim + d] / static_cast<double>(counts[c]);
                continue;
            }
            // Empty cluster: move it onto the worst-fit instance.
            std::size_t far = 0;
            for (std::size_t i = 1; i < m; ++i)
                if (dist[i] > dist[far]) far = i;
            auto x = data.row(far);
            std::copy(x.begin(), x.end(), target.begin());
            dist[far] = 0.0;
        }
    }
    return result;
}

}  // namespace rsom
