#include "rsom/synth.hpp"

#include <stdexcept>

#include "rsom/random.hpp"

namespace rsom {

void SynthSpec::validate() const {
    if (blobs.empty()) throw std::invalid_argument("synthetic spec needs at least one blob");
    const std::size_t dim = blobs.front().mean.size();
    if (dim == 0) throw std::invalid_argument("blob means must be nonempty");
    for (const auto& blob : blobs) {
        if (blob.mean.size() != dim) throw std::invalid_argument("blob means differ in dimension");
        if (!(blob.stddev > 0.0)) throw std::invalid_argument("blob stddev must be positive");
        if (blob.count == 0) throw std::invalid_argument("blob count must be positive");
    }
    if (box_min.size() != dim || box_max.size() != dim)
        throw std::invalid_argument("outlier box must match the blob dimension");
    for (std::size_t d = 0; d < dim; ++d) {
        if (!(box_min[d] <= box_max[d])) throw std::invalid_argument("outlier box min exceeds max");
        for (const auto& blob : blobs)
            if (blob.mean[d] < box_min[d] || blob.mean[d] > box_max[d])
                throw std::invalid_argument("outlier box must contain every blob mean");
    }
}

Dataset synthesize(const SynthSpec& spec) {
    spec.validate();
    const std::size_t dim = spec.blobs.front().mean.size();
    Rng rng(spec.seed);
    std::vector<double> values;
    std::vector<int> labels;
    for (std::size_t b = 0; b < spec.blobs.size(); ++b) {
        const auto& blob = spec.blobs[b];
        for (std::size_t n = 0; n < blob.count; ++n) {
            for (std::size_t d = 0; d < dim; ++d) values.push_back(blob.mean[d] + blob.stddev * rng.normal());
            labels.push_back(static_cast<int>(b));
        }
    }
    for (std::size_t n = 0; n < spec.outliers; ++n) {
        for (std::size_t d = 0; d < dim; ++d) values.push_back(rng.uniform(spec.box_min[d], spec.box_max[d]));
        labels.push_back(kOutlierLabel);
    }
    return Dataset(dim, std::move(values), std::move(labels));
}

}  // namespace rsom
