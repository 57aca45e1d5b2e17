#include "dgue/experiments.hpp"

#include <cmath>
#include <numbers>

#include "dgue/error.hpp"
#include "dgue/kernel.hpp"
#include "dgue/parallel.hpp"
#include "dgue/quadrature.hpp"
#include "dgue/spectral.hpp"

namespace dgue {

Spectrum wigner_spectrum(const WignerSpec& spec, int n, RngSeed seed) {
    const HermitianMatrix w = sample_wigner(spec, n, seed);
    return hermitian_eigenvalues(assemble_deformed(w, 0.0, seed));
}

SemicircleResult semicircle_experiment(const WignerSpec& spec, double a, int n, int trials, int bins, RngSeed seed,
                                       unsigned threads) {
    if (trials < 1 || bins < 1) throw ConfigError("semicircle_experiment: trials and bins must be positive");
    std::vector<Spectrum> spectra(trials);
    parallel_for(
        trials,
        [&](std::size_t t) {
            const HermitianMatrix w = sample_wigner(spec, n, seed.substream(2 * t));
            spectra[t] = hermitian_eigenvalues(assemble_deformed(w, a, seed.substream(2 * t + 1)));
        },
        threads);
    std::vector<double> all;
    for (const auto& s : spectra) all.insert(all.end(), s.values().begin(), s.values().end());
    const double r = std::sqrt(1.0 + 4.0 * a * a);
    const Histogram h = make_histogram(all, -r, r, bins);
    SemicircleResult out;
    out.eigenvalues = all.size();
    for (int b = 0; b < bins; ++b) {
        const double lo = -r + b * h.width(), hi = lo + h.width();
        // u = r cos(phi) keeps the edge square root smooth
        const double mass = integrate(
            [&](double phi) { return semicircle_rho(r * std::cos(phi), a) * r * std::sin(phi); },
            std::acos(std::min(1.0, hi / r)), std::acos(std::max(-1.0, lo / r)), 4, 20);
        out.centers.push_back(h.center(b));
        out.histogram.push_back(h.density[b]);
        out.expected.push_back(mass / h.width());
        out.sup_error = std::max(out.sup_error, std::abs(h.density[b] - out.expected.back()));
    }
    return out;
}

KernelScanResult kernel_scan(const WignerSpec& spec, double a, double u, int n, int spectra,
                             const std::vector<double>& taus, RngSeed seed, unsigned threads) {
    if (spectra < 1) throw ConfigError("kernel_scan: need at least one spectrum");
    std::vector<std::vector<double>> values(spectra);
    parallel_for(
        spectra,
        [&](std::size_t k) {
            DeformedKernelEvaluator ev(KernelContext::make(u, a, wigner_spectrum(spec, n, seed.substream(k))));
            for (double tau : taus) values[k].push_back(ev.evaluate(tau).value);
        },
        threads);
    KernelScanResult out;
    out.tau = taus;
    out.kernel_mean.assign(taus.size(), 0.0);
    for (double tau : taus) out.sine.push_back(sine_kernel(tau));
    for (const auto& v : values) {
        double sup = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            out.kernel_mean[i] += v[i] / spectra;
            sup = std::max(sup, std::abs(v[i] - out.sine[i]));
        }
        out.sup_errors.push_back(sup);
        out.mean_sup_error += sup / spectra;
    }
    return out;
}

namespace {

MarginalKs marginal_ks(const std::vector<double>& y, double a, const std::vector<double>& lower,
                       const std::vector<double>& upper) {
    const Spectrum ys(y);
    const double s = a * a / 2.0;
    const double reach = 10.0 * std::sqrt(s) + 1.0;
    const PairMarginals m = pair_marginals([&](double x1, double x2) { return eigen_density_rhoN({x1, x2}, ys, a); },
                                           y.front() - reach, y.back() + reach, 2001);
    MarginalKs out;
    out.samples = lower.size();
    out.lower = ks_distance(lower, [&](double x) { return m.lower(x); });
    out.upper = ks_distance(upper, [&](double x) { return m.upper(x); });
    return out;
}

}  // namespace

MarginalKs eigen_density_check(const std::vector<double>& y, double a, int samples, RngSeed seed) {
    if (y.size() != 2) throw ConfigError("eigen_density_check: N must be 2");
    std::vector<double> lower(samples), upper(samples);
    const double scale = a / std::sqrt(2.0);
    for (int t = 0; t < samples; ++t) {
        const HermitianMatrix v = sample_gue(2, seed.substream(t));
        // eigenvalues of a 2x2 Hermitian matrix in closed form
        const double p = y[0] + scale * v(0, 0).real(), q = y[1] + scale * v(1, 1).real();
        const double off = scale * std::abs(v(0, 1));
        const double mid = 0.5 * (p + q), rad = std::hypot(0.5 * (p - q), off);
        lower[t] = mid - rad;
        upper[t] = mid + rad;
    }
    return marginal_ks(y, a, lower, upper);
}

DysonCheck dyson_check(const std::vector<double>& y, double a, int paths, RngSeed seed, unsigned threads) {
    const double t_final = a * a / static_cast<double>(y.size());
    std::vector<DysonResult> results(paths);
    parallel_for(
        paths, [&](std::size_t p) { results[p] = dyson_evolve(y, t_final, seed.substream(p)); }, threads);
    DysonCheck out;
    std::vector<double> lower, upper;
    for (auto& r : results) {
        out.rejections += r.rejections;
        if (y.size() == 2) {
            lower.push_back(r.values[0]);
            upper.push_back(r.values[1]);
        }
        out.terminal.push_back(std::move(r.values));
    }
    if (y.size() == 2) out.ks = marginal_ks(y, a, lower, upper);
    return out;
}

std::vector<KmCheckRow> km_check(const std::vector<double>& y, double S, const std::vector<double>& t_grid,
                                 const std::vector<double>& z, int grid) {
    if (y.size() != 2) throw ConfigError("km_check: N must be 2");
    std::vector<KmCheckRow> rows;
    for (double t : t_grid) {
        const PathConfig cfg{y, z, S, t};
        double gap = 0.0;
        for (int i = 0; i < grid; ++i)
            for (int j = 0; j < grid; ++j) {
                const double x1 = -3.0 + 6.0 * i / (grid - 1), x2 = -3.0 + 6.0 * j / (grid - 1);
                if (!(x1 < x2)) continue;
                gap = std::max(gap, std::abs(km_conditional_density({x1, x2}, cfg) - km_limit_density_qS({x1, x2}, y, S)));
            }
        rows.push_back({t, gap});
    }
    return rows;
}

std::vector<PartitionRatioRow> partition_ratio_check() {
    using Basis = BiorthogonalKernel::Basis;
    const Basis poly2{[](double) { return 1.0; }, [](double x) { return x; }};
    const Basis phi3{[](double) { return 1.0; }, [](double x) { return x; }, [](double x) { return x * x; }};
    const Basis psi3{[](double x) { return std::exp(-x); }, [](double x) { return std::cos(x); },
                     [](double x) { return 1.0 + x * x * x; }};
    const std::vector<std::pair<std::string, std::function<double(double)>>> weights{
        {"x", [](double x) { return x; }},
        {"sin(pi x)/2", [](double x) { return 0.5 * std::sin(std::numbers::pi * x); }},
        {"exp(-x)-1/2", [](double x) { return std::exp(-x) - 0.5; }},
    };
    const BiorthogonalKernel k2(poly2, poly2, 0.0, 1.0), k3(phi3, psi3, 0.0, 1.0);
    std::vector<PartitionRatioRow> rows;
    for (const auto* k : {&k2, &k3})
        for (const auto& [name, g] : weights) {
            const FredholmRatio r = fredholm_ratio_check(*k, g, 32);
            rows.push_back({k->rank(), name, r.lhs, r.rhs, r.gap});
        }
    return rows;
}

}  // namespace dgue
