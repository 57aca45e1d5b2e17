#include "dgue/fredholm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "dgue/error.hpp"
#include "dgue/kernel.hpp"
#include "dgue/quadrature.hpp"
#include "dgue/warning.hpp"

namespace dgue {

namespace {

constexpr double kStep = 1e-3;
constexpr int kMinStencilNodes = 48;
constexpr double kClampTolerance = 1e-6;

const Kernel& sine_process_kernel() {
    static const Kernel k = [](double x, double y) { return sine_kernel(x - y); };
    return k;
}

// One node count for a whole stencil, sized for its widest interval.
int stencil_nodes(double s) {
    const double reach = std::abs(s) + 2.0 * kStep;
    return std::max(kMinStencilNodes, fredholm_det_adaptive(sine_process_kernel(), reach).nodes);
}

template <class F>
double richardson(F&& stencil) {
    return (16.0 * stencil(kStep / 2.0) - stencil(kStep)) / 15.0;
}

}  // namespace

NystromGrid NystromGrid::make(double s, int n) {
    if (n < 1) throw ConfigError("NystromGrid: n must be positive");
    NystromGrid g;
    g.s = s;
    g.n = n;
    const QuadratureRule& rule = gauss_legendre(n);
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        g.nodes[i] = 0.5 * s * (rule.nodes[i] + 1.0);
        g.weights[i] = 0.5 * s * rule.weights[i];
    }
    return g;
}

double fredholm_det(const Kernel& kernel, double s, int n) {
    if (n < 4) throw ConfigError("fredholm_det: need at least 4 nodes");
    if (s == 0.0) return 1.0;
    const NystromGrid g = NystromGrid::make(s, n);
    Eigen::MatrixXd m(n, n);
    if (s > 0.0) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = (i == j ? 1.0 : 0.0) -
                          std::sqrt(g.weights[i]) * kernel(g.nodes[i], g.nodes[j]) * std::sqrt(g.weights[j]);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = (i == j ? 1.0 : 0.0) - kernel(g.nodes[i], g.nodes[j]) * g.weights[j];
    }
    return m.partialPivLu().determinant();
}

FredholmResult fredholm_det_adaptive(const Kernel& kernel, double s, double tol, int max_nodes) {
    FredholmResult r;
    int n = 16;
    double prev = fredholm_det(kernel, s, n);
    std::vector<double> history{prev};
    while (2 * n <= max_nodes) {
        const double cur = fredholm_det(kernel, s, 2 * n);
        r.last_change = std::abs(cur - prev);
        history.push_back(cur);
        n *= 2;
        prev = cur;
        if (r.last_change < tol) {
            r.value = cur;
            r.nodes = n;
            return r;
        }
    }
    nlohmann::json d;
    d["s"] = s;
    d["max_nodes"] = max_nodes;
    d["tolerance"] = tol;
    d["history"] = history;
    throw AccuracyError("fredholm_det: node doubling did not reach tolerance", d.dump());
}

double gap_probability_H(double s) {
    if (s < 0.0) throw DomainError("gap_probability_H: s must be >= 0");
    return fredholm_det_adaptive(sine_process_kernel(), s).value;
}

double gap_probability_H(double s, int nodes) { return fredholm_det(sine_process_kernel(), s, nodes); }

double gap_probability_series(double s, int terms, int nodes_per_axis) {
    if (terms < 0 || terms > 4) throw DomainError("gap_probability_series: terms must be in 0..4");
    if (s < 0.0) throw DomainError("gap_probability_series: s must be >= 0");
    const QuadratureRule rule = gauss_legendre(nodes_per_axis, 0.0, s);
    const int q = static_cast<int>(rule.size());
    double total = 1.0;
    double factorial = 1.0;
    for (int m = 1; m <= terms; ++m) {
        factorial *= m;
        std::vector<int> idx(m, 0);
        std::vector<double> pts(m);
        double integral = 0.0;
        for (;;) {
            double w = 1.0;
            for (int c = 0; c < m; ++c) {
                pts[c] = rule.nodes[idx[c]];
                w *= rule.weights[idx[c]];
            }
            integral += w * correlation_det(pts, sine_process_kernel());
            int c = 0;
            while (c < m && ++idx[c] == q) idx[c++] = 0;
            if (c == m) break;
        }
        total += (m % 2 ? -1.0 : 1.0) * integral / factorial;
    }
    return total;
}

double gap_probability_dH(double s) {
    if (s < 0.0) throw DomainError("gap_probability_dH: s must be >= 0");
    const int n = stencil_nodes(s);
    auto H = [n](double x) { return gap_probability_H(x, n); };
    return richardson([&](double h) {
        return (-H(s + 2 * h) + 8.0 * H(s + h) - 8.0 * H(s - h) + H(s - 2 * h)) / (12.0 * h);
    });
}

double gap_probability_d2H(double s) {
    if (s < 0.0) throw DomainError("gap_probability_d2H: s must be >= 0");
    const int n = stencil_nodes(s);
    auto H = [n](double x) { return gap_probability_H(x, n); };
    return richardson([&](double h) {
        return (-H(s + 2 * h) + 16.0 * H(s + h) - 30.0 * H(s) + 16.0 * H(s - h) - H(s - 2 * h)) / (12.0 * h * h);
    });
}

double gaudin_density(double s) {
    const double p = gap_probability_d2H(s);
    if (p >= 0.0) return p;
    if (p >= -kClampTolerance) {
        std::ostringstream msg;
        msg << "gaudin_density: clamped " << p << " to 0 at s=" << s;
        warn(msg.str());
        return 0.0;
    }
    std::ostringstream msg;
    msg << "gaudin_density: negative density " << p << " at s=" << s;
    throw NumericalError(msg.str());
}

double spacing_cdf(double s) {
    if (s == 0.0) return 0.0;
    return gap_probability_dH(s) + 1.0;
}

}  // namespace dgue
