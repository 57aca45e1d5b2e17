// Acceptance suite: one PASS/FAIL line per criterion.
//   dgue_acceptance            run all
//   dgue_acceptance 3 7        run selected criteria

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dgue/experiments.hpp"
#include "dgue/fredholm.hpp"
#include "dgue/kernel.hpp"
#include "dgue/quadrature.hpp"
#include "dgue/spacing.hpp"
#include "dgue/spectral.hpp"

using namespace dgue;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double time_limit;  // seconds
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. semicircle
constexpr double kSemicircleTol = 0.02;
Outcome semicircle() {
    const auto r = semicircle_experiment(WignerSpec::standard(LawKind::Bernoulli), 1.0, 1000, 50, 40, {1001, 0});
    return {r.sup_error < kSemicircleTol, fmt("sup_bin_error=%.4f tol=%.2f", r.sup_error, kSemicircleTol)};
}

// 2. sine-kernel limit
constexpr double kSineTol = 0.05;
Outcome sine_limit() {
    std::vector<double> taus;
    for (int i = -16; i <= 16; ++i) taus.push_back(0.25 * i);
    std::vector<double> errs;
    for (int n : {100, 200, 400})
        errs.push_back(kernel_scan(WignerSpec::standard(LawKind::Bernoulli), 1.0, 0.0, n, 20, taus, {1002, std::uint64_t(n)})
                           .mean_sup_error);
    const bool decreasing = errs[1] < errs[0] && errs[2] < errs[1];
    return {decreasing && errs[2] <= kSineTol,
            fmt("mean sup error N=100:%.4f N=200:%.4f N=400:%.4f decreasing=%d tol=%.2f", errs[0], errs[1], errs[2],
                decreasing, kSineTol)};
}

// 3. spacing universality
constexpr double kSpacingTol = 0.03;
constexpr double kJointSe = 2.0;
Outcome spacing() {
    SpacingExperiment e;
    e.n = 500;
    e.a = 1.0;
    e.trials = 2000;
    e.s_grid = {0.5, 1.0, 2.0};
    e.spec = WignerSpec::standard(LawKind::Bernoulli);
    e.seed = {1003, 1};
    const auto bern = mc_expected_spacing(e);
    e.spec = WignerSpec::standard(LawKind::Uniform);
    e.seed = {1003, 2};
    const auto unif = mc_expected_spacing(e);
    bool pass = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < e.s_grid.size(); ++i) {
        const double target = spacing_cdf(e.s_grid[i]);
        const double eb = std::abs(bern[i].mean - target), eu = std::abs(unif[i].mean - target);
        const double joint = std::hypot(bern[i].standard_error, unif[i].standard_error);
        const double diff = std::abs(bern[i].mean - unif[i].mean);
        pass = pass && eb <= kSpacingTol && eu <= kSpacingTol && diff <= kJointSe * joint;
        d << fmt("s=%.1f cdf=%.4f bern=%.4f unif=%.4f |diff|/se=%.2f; ", e.s_grid[i], target, bern[i].mean,
                 unif[i].mean, diff / joint);
    }
    d << fmt("tol=%.2f", kSpacingTol);
    return {pass, d.str()};
}

// 4. Fredholm determinant
constexpr double kSeriesTol = 5e-5;
constexpr double kDoublingTol = 1e-12;
constexpr double kMomentTol = 1e-3;
constexpr double kIdentityTol = 1e-4;
Outcome fredholm() {
    double series = 0.0, series_at = 0.0, oracle4 = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double s = 0.01 * i;
        const double h = gap_probability_H(s);
        const double e = std::abs(h - (1 - s + pi * pi * std::pow(s, 4) / 36));
        if (e > series) series = e, series_at = s;
        if (i % 5 == 0) oracle4 = std::max(oracle4, std::abs(h - gap_probability_series(s, 4)));
    }
    const Kernel sk = [](double x, double y) { return sine_kernel(x - y); };
    double doubling = 0.0;
    for (int i = 1; i <= 12; ++i) doubling = std::max(doubling, std::abs(fredholm_det(sk, 0.5 * i, 48) - fredholm_det(sk, 0.5 * i, 96)));
    const double mass = integrate([](double s) { return gaudin_density(s); }, 0.0, 6.0, 48, 12);
    const double mean = integrate([](double s) { return s * gaudin_density(s); }, 0.0, 6.0, 48, 12);
    double identity = 0.0, acc = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double lo = 0.1 * (i - 1), hi = 0.1 * i;
        acc += integrate([](double s) { return gaudin_density(s); }, lo, hi, 1, 12);
        identity = std::max(identity, std::abs(spacing_cdf(hi) - acc));
    }
    const bool ok_series = series < kSeriesTol, ok_doubling = doubling < kDoublingTol;
    const bool ok_moments = std::abs(mass - 1) < kMomentTol && std::abs(mean - 1) < kMomentTol;
    const bool ok_identity = identity < kIdentityTol;
    return {ok_series && ok_doubling && ok_moments && ok_identity,
            fmt("closed-form series max=%.3g at s=%.2f (tol %.0e)%s; 4-term series oracle max=%.2g; doubling=%.2g (tol "
                "%.0e); int p=%.6f int s p=%.6f (tol %.0e); cdf identity=%.2g (tol %.0e)",
                series, series_at, kSeriesTol, ok_series ? "" : " [FAIL]", oracle4, doubling, kDoublingTol, mass, mean,
                kMomentTol, identity, kIdentityTol)};
}

// 5. biorthogonal Fredholm ratio
constexpr double kRatioTol = 1e-8;
Outcome partition_ratio() {
    double worst = 0.0;
    std::ostringstream d;
    for (const auto& r : partition_ratio_check()) {
        worst = std::max(worst, r.gap);
        d << fmt("N=%d g=%s gap=%.1e; ", r.n, r.g.c_str(), r.gap);
    }
    d << fmt("tol=%.0e", kRatioTol);
    return {worst < kRatioTol, d.str()};
}

// 6. eigenvalue density of diag(y) + GUE
constexpr double kEigenDensityTol = 0.02;
Outcome eigen_density() {
    const MarginalKs ks = eigen_density_check({-1.0, 1.0}, 1.0, 100000, {1006, 0});
    return {ks.lower < kEigenDensityTol && ks.upper < kEigenDensityTol,
            fmt("KS lower=%.4f upper=%.4f samples=%zu tol=%.2f", ks.lower, ks.upper, ks.samples, kEigenDensityTol)};
}

// 7. T -> infinity limit of the conditional density
constexpr double kKmTol = 1e-4;
Outcome km_limit() {
    const auto rows = km_check({-1.0, 1.0}, 1.0, {1e1, 1e2, 1e3, 1e4, 1e5, 1e6});
    bool monotone = true;
    std::ostringstream d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i && !(rows[i].sup_gap < rows[i - 1].sup_gap)) monotone = false;
        d << fmt("T=%.0e:%.2e ", rows[i].T, rows[i].sup_gap);
    }
    d << fmt("monotone=%d tol=%.0e", monotone, kKmTol);
    return {monotone && rows.back().sup_gap < kKmTol, d.str()};
}

// 8. Dyson motion terminal law
constexpr double kDysonTol = 0.05;
Outcome dyson() {
    const DysonCheck r = dyson_check({-1.0, 1.0}, 1.0, 10000, {1008, 0});
    return {r.ks.lower < kDysonTol && r.ks.upper < kDysonTol,
            fmt("KS lower=%.4f upper=%.4f paths=%zu rejected_steps=%llu tol=%.2f", r.ks.lower, r.ks.upper, r.ks.samples,
                static_cast<unsigned long long>(r.rejections), kDysonTol)};
}

// 9. GUE kernel
constexpr double kTraceTol = 1e-8;
constexpr double kGueSineTol = 0.02;
Outcome gue() {
    const int n = 200;
    const double trace = integrate([&](double x) { return gue_kernel(x, x, n); }, -4.0, 4.0, 200, 20);
    const double rho = 1 / pi;
    double err = 0.0;
    for (int i = -16; i <= 16; ++i)
        for (int j = -16; j <= 16; ++j) {
            const double s = 0.25 * i, t = 0.25 * j;
            err = std::max(err, std::abs(gue_kernel(s / (n * rho), t / (n * rho), n) / (n * rho) - sine_kernel(s - t)));
        }
    return {std::abs(trace - n) < kTraceTol * n && err <= kGueSineTol,
            fmt("trace-N=%.2e (tol %.0e N) sinc error=%.4f (tol %.2f)", trace - n, kTraceTol, err, kGueSineTol)};
}

// 10. identities
constexpr double kGTol = 1e-10;
constexpr double kSaddleTol = 1e-10;
constexpr double kResidueTol = 1e-8;
Outcome identities() {
    Stream rng({1010, 0});
    const Spectrum y = wigner_spectrum(WignerSpec::standard(LawKind::Bernoulli), 30, {1010, 1});
    double g_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const cplx z(3 * rng.uniform() - 1.5, (rng.uniform() < 0.5 ? -1 : 1) * (0.05 + rng.uniform()));
        const cplx w(3 * rng.uniform() - 1.5, 4 * rng.uniform() - 2);
        const double c = rng.uniform() - 0.5;
        const cplx a = g_N_sum(z, w, c, 1.0, y), b = g_N_closed(z, w, c, 1.0, y);
        g_err = std::max(g_err, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    double saddle = 0.0;
    for (double a : {0.3, 0.5, 1.0, 2.0})
        for (double frac : {-0.9, -0.4, 0.0, 0.3, 0.8}) {
            const double u = frac * std::sqrt(0.5 + 2 * a * a);
            const SaddleData s = saddle_data(u, a);
            const double sc = a * a * s.rho_u;
            saddle = std::max({saddle, std::abs(s.z_c_plus / sc - cplx(s.omega0, pi)),
                               std::abs(s.z_c_minus / sc - cplx(s.omega0, -pi))});
        }
    double residue = 0.0;
    for (double u : {0.0, 0.5}) {
        const ContourQuadrature g = build_gamma(KernelContext::make(u, 1.0, y), 16);
        cplx loop = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) loop += g.weights[i] / (g.nodes[i] - 0.3);
        residue = std::max(residue, std::abs(loop - cplx(0, 2 * pi)));
    }
    return {g_err < kGTol && saddle < kSaddleTol && residue < kResidueTol,
            fmt("g_N identity=%.1e (tol %.0e) saddle identity=%.1e (tol %.0e) residue=%.1e (tol %.0e)", g_err, kGTol,
                saddle, kSaddleTol, residue, kResidueTol)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "semicircle", 120, semicircle},      {2, "sine-kernel limit", 300, sine_limit},
        {3, "spacing universality", 600, spacing}, {4, "fredholm determinant", 30, fredholm},
        {5, "biorthogonal ratio", 30, partition_ratio},    {6, "eigenvalue density", 60, eigen_density},
        {7, "conditional density limit", 30, km_limit}, {8, "dyson motion", 120, dyson},
        {9, "gue kernel", 30, gue},               {10, "identities", 10, identities},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("[%s] criterion %d (%s): %s; time=%.1fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.time_limit, in_time ? "" : " [over time]");
        std::fflush(stdout);
    }
    return failures ? 1 : 0;
}
