#include "rsom/pyramid_fusion.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rsom {

std::size_t PyramidConfidences::classes() const {
    std::size_t c = 0;
    bool seen = false;
    for (const auto& level : levels) {
        for (const auto& grid : level) {
            if (!seen) {
                c = grid.conf.size();
                seen = true;
            } else if (grid.conf.size() != c) {
                throw std::invalid_argument("grid confidence vectors differ in length (" + std::to_string(c) +
                                            " vs " + std::to_string(grid.conf.size()) + ")");
            }
        }
    }
    if (!seen) throw std::invalid_argument("pyramid holds no grids");
    if (c == 0) throw std::invalid_argument("confidence vectors must be nonempty");
    return c;
}

double level_weight(int level) {
    if (level < 1 || level > 3) throw std::invalid_argument("pyramid level must be 1, 2 or 3");
    return 1.0 / static_cast<double>(1 << (3 - level));
}

double center_prior(Point2 x, Point2 x_hat, double sigma_s) {
    const double dx = x_hat[0] - x[0];
    const double dy = x_hat[1] - x[1];
    return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma_s * sigma_s));
}

std::vector<double> fuse(const PyramidConfidences& pyramid, const FusionConfig& config) {
    if (!(config.sigma_s > 0.0)) throw std::invalid_argument("sigma_s must be positive");
    const std::size_t c = pyramid.classes();
    std::vector<double> scores(c, 0.0);
    for (int l = 1; l <= 3; ++l) {
        const double lw = level_weight(l);
        for (const auto& grid : pyramid.levels[static_cast<std::size_t>(l - 1)]) {
            const double coeff = lw * center_prior(grid.center, config.image_center, config.sigma_s);
            for (std::size_t k = 0; k < c; ++k) scores[k] += coeff * grid.conf[k];
        }
    }
    return scores;
}

std::size_t classify(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("cannot classify an empty score vector");
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k)
        if (scores[k] > scores[best]) best = k;
    return best;
}

}  // namespace rsom
