#include "rsom/metrics.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace rsom {

namespace {

double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
    const double n = static_cast<double>(a.size());
    std::map<std::pair<int, int>, std::size_t> table;
    std::map<int, std::size_t> rows;
    std::map<int, std::size_t> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++table[{a[i], b[i]}];
        ++rows[a[i]];
        ++cols[b[i]];
    }
    double index = 0.0;
    for (const auto& [key, count] : table) index += choose2(static_cast<double>(count));
    double sum_rows = 0.0;
    for (const auto& [key, count] : rows) sum_rows += choose2(static_cast<double>(count));
    double sum_cols = 0.0;
    for (const auto& [key, count] : cols) sum_cols += choose2(static_cast<double>(count));

    const double total = choose2(n);
    const double expected = total > 0.0 ? sum_rows * sum_cols / total : 0.0;
    const double max_index = 0.5 * (sum_rows + sum_cols);
    const double denom = max_index - expected;
    // Both partitions trivial (all singletons or a single block): identical.
    if (denom == 0.0) return 1.0;
    return (index - expected) / denom;
}

PrecisionRecall outlier_pr(std::span<const std::size_t> flagged, std::span<const std::size_t> truth, std::size_t m) {
    std::vector<bool> is_true(m, false);
    for (std::size_t i : truth) {
        if (i >= m) throw std::invalid_argument("truth index out of range");
        is_true[i] = true;
    }
    const std::set<std::size_t> flagged_set(flagged.begin(), flagged.end());
    const std::set<std::size_t> truth_set(truth.begin(), truth.end());
    std::size_t hits = 0;
    for (std::size_t i : flagged_set) {
        if (i >= m) throw std::invalid_argument("flagged index out of range");
        if (is_true[i]) ++hits;
    }
    PrecisionRecall pr;
    pr.precision = flagged_set.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(flagged_set.size());
    pr.recall = truth_set.empty() ? 1.0 : static_cast<double>(hits) / static_cast<double>(truth_set.size());
    return pr;
}

double purity(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("labelings differ in length");
    if (predicted.empty()) return 1.0;
    std::map<int, std::map<int, std::size_t>> counts;
    for (std::size_t i = 0; i < predicted.size(); ++i) ++counts[predicted[i]][truth[i]];
    std::size_t majority_total = 0;
    for (const auto& [cluster, by_truth] : counts) {
        std::size_t best = 0;
        for (const auto& [label, count] : by_truth) best = std::max(best, count);
        majority_total += best;
    }
    return static_cast<double>(majority_total) / static_cast<double>(predicted.size());
}

}  // namespace rsom
