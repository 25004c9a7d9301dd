#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsom/dataset.hpp"

namespace rsom {

struct BlobSpec {
    std::vector<double> mean;
    double stddev = 0.1;
    std::size_t count = 100;
};

struct SynthSpec {
    std::vector<BlobSpec> blobs;
    std::size_t outliers = 0;
    std::vector<double> box_min;
    std::vector<double> box_max;
    std::uint64_t seed = 1;

    void validate() const;
};

inline constexpr int kOutlierLabel = -1;

// Blob points (label = blob index) followed by uniform box outliers
// (label -1).
Dataset synthesize(const SynthSpec& spec);

}  // namespace rsom
