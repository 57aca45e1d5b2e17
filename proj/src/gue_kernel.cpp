#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "dgue/error.hpp"
#include "dgue/kernel.hpp"

namespace dgue {

namespace {

// psi_0..psi_n of the orthonormal Hermite functions (weight e^{-t^2}) at t, as mantissas
// sharing one exponent: psi_k(t) = m[k] * exp(log_scale).
struct HermiteFunctions {
    std::vector<double> m;
    double log_scale = 0.0;
};

HermiteFunctions hermite_functions(double t, int n) {
    HermiteFunctions h;
    h.m.resize(n + 1);
    h.log_scale = -0.5 * t * t;
    h.m[0] = std::pow(std::numbers::pi, -0.25);
    if (n >= 1) h.m[1] = std::sqrt(2.0) * t * h.m[0];
    for (int k = 1; k < n; ++k) {
        h.m[k + 1] = std::sqrt(2.0 / (k + 1)) * t * h.m[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * h.m[k - 1];
        if (std::abs(h.m[k + 1]) > 1e150) {
            for (int j = 0; j <= k + 1; ++j) h.m[j] *= 1e-150;
            h.log_scale += 150.0 * std::log(10.0);
        }
    }
    return h;
}

}  // namespace

double gue_kernel(double x, double y, int n) {
    if (n < 1) throw DomainError("gue_kernel: N must be at least 1");
    // p_k(x) e^{-N x^2/4} = (N/2)^{1/4} psi_k(x sqrt(N/2))
    const double stretch = std::sqrt(n / 2.0);
    const double s = x * stretch, t = y * stretch;
    const HermiteFunctions hs = hermite_functions(s, n + 1);
    const HermiteFunctions ht = s == t ? hs : hermite_functions(t, n);
    const double scale = std::exp(hs.log_scale + ht.log_scale);
    if (scale == 0.0) return 0.0;
    double sum;
    if (s == t) {
        sum = n * hs.m[n] * hs.m[n] - std::sqrt(static_cast<double>(n) * (n + 1)) * hs.m[n - 1] * hs.m[n + 1];
    } else if (std::abs(s - t) < 1e-4) {
        sum = 0.0;
        for (int k = 0; k < n; ++k) sum += hs.m[k] * ht.m[k];
    } else {
        sum = std::sqrt(n / 2.0) * (hs.m[n] * ht.m[n - 1] - hs.m[n - 1] * ht.m[n]) / (s - t);
    }
    return stretch * sum * scale;
}

double correlation_det(std::span<const double> points, const std::function<double(double, double)>& kernel) {
    const auto m = static_cast<Eigen::Index>(points.size());
    if (m > 12) throw DomainError("correlation_det: at most 12 points");
    if (m == 0) return 1.0;
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) k(i, j) = kernel(points[i], points[j]);
    return k.fullPivLu().determinant();
}

}  // namespace dgue
