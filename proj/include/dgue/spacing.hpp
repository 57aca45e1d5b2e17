#pragma once

#include <vector>

#include "dgue/ensembles.hpp"
#include "dgue/spectrum.hpp"

namespace dgue {

struct SpacingWindow {
    double u = 0.0;
    double t_n = 1.0;
    double rho_u = 1.0;
    double s = 1.0;
};

/// (1/2t_N) #{j : x_{j+1} - x_j <= s/(N rho) and |x_j - u| <= t_N/(N rho)}.
double spacing_statistic(const Spectrum& x, const SpacingWindow& win);

/// Same statistic for several thresholds in one pass.
std::vector<double> spacing_statistic(const Spectrum& x, double u, double t_n, double rho_u,
                                      const std::vector<double>& s_grid);

struct SpacingExperiment {
    WignerSpec spec = WignerSpec::standard(LawKind::Bernoulli);
    double a = 1.0;
    int n = 500;
    int trials = 2000;
    std::vector<double> s_grid{0.5, 1.0, 2.0};
    double u = 0.0;
    /// 0 selects ceil(sqrt(N)).
    double t_n = 0.0;
    RngSeed seed;
    /// Replace W + aV by a pure GUE with the same semicircle.
    bool gue_control = false;
    unsigned threads = 0;
};

struct SpacingEstimate {
    double s = 0.0;
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo mean of the spacing statistic over independent M = (W + aV)/sqrt N.
/// Trial t draws W from substream 2t and V from substream 2t+1; trials merge in index order.
std::vector<SpacingEstimate> mc_expected_spacing(const SpacingExperiment& exp);

}  // namespace dgue
