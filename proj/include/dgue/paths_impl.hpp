#pragma once

#include "dgue/quadrature.hpp"

namespace dgue {

template <class Density>
PairMarginals pair_marginals(Density&& density, double lo, double hi, int grid) {
    // marginal densities on a uniform grid, then cumulative trapezoid
    std::vector<double> x(grid), m_lower(grid), m_upper(grid);
    const double h = (hi - lo) / (grid - 1);
    for (int i = 0; i < grid; ++i) {
        x[i] = lo + h * i;
        double above = 0.0, below = 0.0;
        if (x[i] < hi) {
            const QuadratureRule r = composite_gauss_legendre(x[i], hi, 8, 16);
            for (std::size_t q = 0; q < r.size(); ++q) above += r.weights[q] * density(x[i], r.nodes[q]);
        }
        if (x[i] > lo) {
            const QuadratureRule r = composite_gauss_legendre(lo, x[i], 8, 16);
            for (std::size_t q = 0; q < r.size(); ++q) below += r.weights[q] * density(r.nodes[q], x[i]);
        }
        m_lower[i] = above;
        m_upper[i] = below;
    }
    std::vector<double> c_lower(grid, 0.0), c_upper(grid, 0.0);
    for (int i = 1; i < grid; ++i) {
        c_lower[i] = c_lower[i - 1] + 0.5 * h * (m_lower[i] + m_lower[i - 1]);
        c_upper[i] = c_upper[i - 1] + 0.5 * h * (m_upper[i] + m_upper[i - 1]);
    }
    const double total = c_lower.back();
    return PairMarginals{TabulatedFunction(x, c_lower), TabulatedFunction(x, c_upper), total};
}

}  // namespace dgue
