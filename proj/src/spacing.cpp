#include "dgue/spacing.hpp"

#include <cmath>

#include "dgue/error.hpp"
#include "dgue/parallel.hpp"
#include "dgue/spectral.hpp"
#include "dgue/stats.hpp"

namespace dgue {

std::vector<double> spacing_statistic(const Spectrum& x, double u, double t_n, double rho_u,
                                      const std::vector<double>& s_grid) {
    if (!(t_n > 0.0) || !(rho_u > 0.0)) throw DomainError("spacing_statistic: t_N and rho(u) must be positive");
    const double n = static_cast<double>(x.size());
    const double unit = 1.0 / (n * rho_u);
    const double half_window = t_n * unit;
    std::vector<double> out(s_grid.size(), 0.0);
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        if (std::abs(x[j] - u) > half_window) continue;
        const double gap = x[j + 1] - x[j];
        for (std::size_t k = 0; k < s_grid.size(); ++k)
            if (gap <= s_grid[k] * unit) out[k] += 1.0;
    }
    for (auto& v : out) v /= 2.0 * t_n;
    return out;
}

double spacing_statistic(const Spectrum& x, const SpacingWindow& win) {
    return spacing_statistic(x, win.u, win.t_n, win.rho_u, {win.s})[0];
}

std::vector<SpacingEstimate> mc_expected_spacing(const SpacingExperiment& e) {
    if (e.trials < 100) throw ConfigError("mc_expected_spacing: trials must be >= 100");
    if (e.n < 2) throw ConfigError("mc_expected_spacing: N must be at least 2");
    if (!(e.a > 0.0)) throw DomainError("mc_expected_spacing: a must be positive");
    const double t_n = e.t_n > 0.0 ? e.t_n : std::ceil(std::sqrt(static_cast<double>(e.n)));
    const double rho = semicircle_rho(e.u, e.a);
    if (!(rho > 0.0)) throw DomainError("mc_expected_spacing: u outside the bulk");
    // a pure GUE scaled by a_eff has the same semicircle radius sqrt(1 + 4a^2)
    const double a_eff = std::sqrt(1.0 + 4.0 * e.a * e.a) / 2.0;

    std::vector<std::vector<double>> per_trial(e.trials);
    parallel_for(
        static_cast<std::size_t>(e.trials),
        [&](std::size_t t) {
            const RngSeed w_seed = e.seed.substream(2 * t);
            const RngSeed v_seed = e.seed.substream(2 * t + 1);
            HermitianMatrix m = e.gue_control
                                    ? assemble_deformed(HermitianMatrix::zero(e.n), a_eff, v_seed)
                                    : assemble_deformed(sample_wigner(e.spec, e.n, w_seed), e.a, v_seed);
            per_trial[t] = spacing_statistic(hermitian_eigenvalues(m), e.u, t_n, rho, e.s_grid);
        },
        e.threads);

    std::vector<RunningStats> acc(e.s_grid.size());
    for (const auto& r : per_trial)
        for (std::size_t k = 0; k < r.size(); ++k) acc[k].add(r[k]);
    std::vector<SpacingEstimate> out;
    for (std::size_t k = 0; k < e.s_grid.size(); ++k)
        out.push_back({e.s_grid[k], acc[k].mean(), acc[k].standard_error()});
    return out;
}

}  // namespace dgue
