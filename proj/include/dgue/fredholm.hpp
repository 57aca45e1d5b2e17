#pragma once

#include <functional>
#include <vector>

namespace dgue {

using Kernel = std::function<double(double, double)>;

/// Gauss-Legendre nodes on [0, s]. For s < 0 the weights are negative (analytic continuation).
struct NystromGrid {
    double s = 0.0;
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    static NystromGrid make(double s, int n);
};

/// det(I - W^{1/2} K W^{1/2}) on an n-node grid over [0, s]; s < 0 uses det(I - K W).
double fredholm_det(const Kernel& kernel, double s, int n);

struct FredholmResult {
    double value = 0.0;
    int nodes = 0;
    double last_change = 0.0;
};

/// Node doubling from 16 until two levels agree to `tol`; AccuracyError past `max_nodes`.
FredholmResult fredholm_det_adaptive(const Kernel& kernel, double s, double tol = 1e-12, int max_nodes = 512);

/// Probability of no sine-process point in an interval of length s.
double gap_probability_H(double s);
/// Same, at a fixed node count.
double gap_probability_H(double s, int nodes);

/// sum_{m <= terms} (-1)^m/m! int_{[0,s]^m} det(K_sine(x_i, x_j)) by tensor Gauss-Legendre.
double gap_probability_series(double s, int terms = 4, int nodes_per_axis = 10);

/// Finite-difference derivatives of H: 5-point central stencils with h = 1e-3 and one Richardson step.
/// All stencil points share one node count.
double gap_probability_dH(double s);
double gap_probability_d2H(double s);

/// p(s) = H''(s). Values in [-1e-6, 0) are clamped to 0 with a warning; lower values throw.
double gaudin_density(double s);

/// H'(s) + 1, the spacing CDF int_0^s p.
double spacing_cdf(double s);

}  // namespace dgue
