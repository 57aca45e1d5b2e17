#pragma once

#include <cstdint>
#include <vector>

#include "dgue/rng.hpp"
#include "dgue/spectrum.hpp"
#include "dgue/stats.hpp"

namespace dgue {

/// (2 pi t)^{-1/2} exp(-(x-y)^2 / 2t).
double heat_kernel(double t, double x, double y);

/// Non-intersecting Brownian paths from y (time 0) through x (time S) to z (time S+T).
struct PathConfig {
    std::vector<double> y;
    std::vector<double> z;  // empty means z_j = j - 1
    double S = 1.0;
    double T = 1.0;

    std::vector<double> end_points() const;
    void validate() const;
};

/// det(p_S(y_j, x_k)) det(p_T(x_j, z_k)) / det(p_{S+T}(y_j, z_k)), N <= 6.
/// When z is an arithmetic progression the T-determinants are evaluated in Vandermonde form,
/// which stays accurate for very large T.
double km_conditional_density(const std::vector<double>& x, const PathConfig& cfg);

/// (2 pi S)^{-N/2} (Delta(x)/Delta(y)) det(exp(-(x_j - y_k)^2 / 2S)), Delta(x) = prod_{i<j}(x_j - x_i).
/// Integrates to 1 over the ordered chamber (N! over R^N).
double km_limit_density_qS(const std::vector<double>& x, const std::vector<double>& y, double S);

/// Density of the eigenvalues of diag(y) + (a/sqrt N) V with V from the GUE: q_S at S = a^2/N.
double eigen_density_rhoN(const std::vector<double>& x, const Spectrum& y, double a);

struct DysonResult {
    std::vector<double> values;
    double min_gap = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t rejections = 0;
};

struct DysonSettings {
    /// Base step; 0 picks 1e-4 * (min gap of y)^2.
    double dt = 0.0;
    /// Each step is also capped by gap_factor * (current min gap)^2.
    double gap_factor = 1e-4;
    /// Halvings of a rejected step before giving up.
    int max_retries = 30;
};

/// Euler-Maruyama for d lambda_i = dB_i + sum_{k != i} dt / (lambda_i - lambda_k).
/// A step that breaks the ordering is split in two with a Brownian bridge and retried.
DysonResult dyson_evolve(const std::vector<double>& y, double t_final, RngSeed seed, DysonSettings settings = {});

/// Marginal CDFs of the smaller and larger coordinate of a two-point density on x1 < x2,
/// tabulated by quadrature over [lo, hi].
struct PairMarginals {
    TabulatedFunction lower;
    TabulatedFunction upper;
    double total_mass = 0.0;
};

template <class Density>
PairMarginals pair_marginals(Density&& density, double lo, double hi, int grid = 801);

}  // namespace dgue

#include "dgue/paths_impl.hpp"
