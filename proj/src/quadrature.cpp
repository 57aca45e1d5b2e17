#include "dgue/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace dgue {

namespace {

QuadratureRule compute_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        if (n == 1) {
            it = cache.emplace(n, QuadratureRule{{0.0}, {2.0}}).first;
        } else {
            it = cache.emplace(n, compute_gauss_legendre(n)).first;
        }
    }
    return it->second;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    const QuadratureRule& ref = gauss_legendre(n);
    QuadratureRule out;
    out.nodes.resize(ref.size());
    out.weights.resize(ref.size());
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        out.nodes[i] = mid + half * ref.nodes[i];
        out.weights[i] = half * ref.weights[i];
    }
    return out;
}

QuadratureRule composite_gauss_legendre(double lo, double hi, int panels, int nodes_per_panel) {
    if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
    const QuadratureRule& ref = gauss_legendre(nodes_per_panel);
    QuadratureRule out;
    out.nodes.reserve(static_cast<std::size_t>(panels) * ref.size());
    out.weights.reserve(out.nodes.capacity());
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double half = 0.5 * width;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            out.nodes.push_back(a + half * (ref.nodes[i] + 1.0));
            out.weights.push_back(half * ref.weights[i]);
        }
    }
    return out;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels,
                 int nodes_per_panel) {
    const QuadratureRule rule = composite_gauss_legendre(lo, hi, panels, nodes_per_panel);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

}  // namespace dgue
