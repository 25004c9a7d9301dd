#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rsom {

double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct PrecisionRecall {
    double precision = 1.0;
    double recall = 1.0;
};

// Empty flagged set has precision 1; empty truth set has recall 1.
PrecisionRecall outlier_pr(std::span<const std::size_t> flagged, std::span<const std::size_t> truth, std::size_t m);

// Fraction of items whose cluster's majority truth label matches theirs.
double purity(std::span<const int> predicted, std::span<const int> truth);

}  // namespace rsom
