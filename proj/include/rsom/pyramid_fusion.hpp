#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace rsom {

using Point2 = std::array<double, 2>;

struct GridConfidence {
    Point2 center{0.5, 0.5};     // normalized image coordinates
    std::vector<double> conf;    // one entry per concept class
};

// Three pyramid levels, coarsest first (index 0 is level 1).
struct PyramidConfidences {
    std::array<std::vector<GridConfidence>, 3> levels;

    // Number of classes; throws std::invalid_argument when grids disagree or
    // the pyramid holds no grid at all.
    std::size_t classes() const;
};

struct FusionConfig {
    double sigma_s = 0.25;
    Point2 image_center{0.5, 0.5};
};

// 1 / 2^(3 - level) for level in {1, 2, 3}.
double level_weight(int level);

// exp(-|x_hat - x|^2 / (2 sigma_s^2)).
double center_prior(Point2 x, Point2 x_hat, double sigma_s);

std::vector<double> fuse(const PyramidConfidences& pyramid, const FusionConfig& config);

// Argmax, lowest index on ties.
std::size_t classify(std::span<const double> scores);

}  // namespace rsom
