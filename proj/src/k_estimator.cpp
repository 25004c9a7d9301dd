#include "rsom/k_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace rsom {

namespace {

constexpr double kRelativeZero = 1e-12;
// Absorbs rounding in the cumulative ratio so nu = 1 is reachable.
constexpr double kRatioSlack = 1e-12;

}  // namespace

std::vector<double> covariance_spectrum(const Dataset& data, bool center) {
    const std::size_t m = data.size();
    const std::size_t dim = data.dim();
    if (m < 2) throw std::invalid_argument("covariance needs at least 2 instances");

    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> x(
        data.values().data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(dim));
    Eigen::MatrixXd centered = x;
    if (center) centered.rowwise() -= x.colwise().mean();
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(m - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("covariance eigendecomposition failed");

    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + dim);
    std::sort(values.begin(), values.end(), std::greater<>());
    const double largest = values.empty() ? 0.0 : values.front();
    for (double& v : values)
        if (!(v > kRelativeZero * largest)) v = 0.0;
    return values;
}

std::size_t components_for_variance(std::span<const double> eigenvalues_desc, double nu) {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must lie in (0, 1]");
    double total = 0.0;
    for (double v : eigenvalues_desc) total += v;
    if (!(total > 0.0)) return 1;

    double running = 0.0;
    for (std::size_t m = 0; m < eigenvalues_desc.size(); ++m) {
        running += eigenvalues_desc[m];
        if (running / total >= nu - kRatioSlack) return m + 1;
    }
    return eigenvalues_desc.size();
}

std::size_t estimate_k(const Dataset& data, double nu, bool center) {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must lie in (0, 1]");
    return components_for_variance(covariance_spectrum(data, center), nu);
}

GridShape grid_shape(std::size_t k) {
    if (k == 0) throw std::invalid_argument("cluster count must be positive");
    auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(k)));
    while (rows * rows > k) --rows;
    while ((rows + 1) * (rows + 1) <= k) ++rows;
    const std::size_t cols = (k + rows - 1) / rows;
    return {static_cast<int>(rows), static_cast<int>(cols)};
}

}  // namespace rsom
