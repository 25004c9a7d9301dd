#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rsom {

// M instance vectors of dimension D, stored row-major, with optional
// integer ground-truth labels used only for evaluation.
class Dataset {
public:
    Dataset(std::size_t dim, std::vector<double> values, std::vector<int> labels = {});

    static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                             std::vector<int> labels = {});

    std::size_t size() const { return values_.size() / dim_; }
    std::size_t dim() const { return dim_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    std::span<const double> values() const { return values_; }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<int>& labels() const { return labels_; }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::size_t dim_;
    std::vector<double> values_;
    std::vector<int> labels_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace rsom
