#include "rsom/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rsom {

Dataset::Dataset(std::size_t dim, std::vector<double> values, std::vector<int> labels)
    : dim_(dim), values_(std::move(values)), labels_(std::move(labels)) {
    if (dim_ == 0) throw std::invalid_argument("dataset dimension must be at least 1");
    if (values_.empty()) throw std::invalid_argument("dataset must hold at least one instance");
    if (values_.size() % dim_ != 0)
        throw std::invalid_argument("dataset values do not form whole rows of dimension " + std::to_string(dim_));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw std::invalid_argument("non-finite component in instance " + std::to_string(i / dim_));
    }
    if (!labels_.empty() && labels_.size() != size())
        throw std::invalid_argument("label count does not match instance count");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels) {
    if (rows.empty()) throw std::invalid_argument("dataset must hold at least one instance");
    const std::size_t dim = rows.front().size();
    std::vector<double> values;
    values.reserve(rows.size() * dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != dim)
            throw std::invalid_argument("instance " + std::to_string(i) + " has dimension " +
                                        std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
        values.insert(values.end(), rows[i].begin(), rows[i].end());
    }
    return Dataset(dim, std::move(values), std::move(labels));
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

}  // namespace rsom
