#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dgue {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n, cached per n).
const QuadratureRule& gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Composite rule: `panels` equal panels of `nodes_per_panel` Gauss-Legendre nodes on [lo, hi].
QuadratureRule composite_gauss_legendre(double lo, double hi, int panels, int nodes_per_panel);

/// Integral of f over [lo, hi] with a composite rule.
double integrate(const std::function<double(double)>& f, double lo, double hi, int panels = 16,
                 int nodes_per_panel = 20);

}  // namespace dgue
