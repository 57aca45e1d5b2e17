#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dgue/ensembles.hpp"
#include "dgue/error.hpp"
#include "dgue/kernel.hpp"
#include "dgue/quadrature.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace dgue;
using std::numbers::pi;

namespace {

Spectrum wigner_spectrum(int n, std::uint64_t seed, LawKind law = LawKind::Bernoulli) {
    const HermitianMatrix w = sample_wigner(WignerSpec::standard(law), n, {seed, 0});
    return hermitian_eigenvalues(HermitianMatrix::from_matrix(w.matrix() / std::sqrt(double(n)), 1e-14));
}

Spectrum uniform_spectrum(int n, std::uint64_t seed) {
    Stream rng({seed, 1});
    std::vector<double> v(n);
    for (auto& x : v) x = 2 * rng.uniform() - 1;
    return Spectrum::from_unsorted(v);
}

}  // namespace

TEST_CASE("gamma encloses the real axis counter-clockwise") {
    for (double u : {0.0, 0.4}) {
        const KernelContext ctx = KernelContext::make(u, 1.0, wigner_spectrum(40, 1));
        const ContourQuadrature g = build_gamma(ctx, 16);
        cplx loop = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) loop += g.weights[i] / (g.nodes[i] - 0.3);
        CHECK(std::abs(loop - cplx(0, 2 * pi)) < 1e-8);
        const double eta = std::max(std::abs(ctx.saddle.z_c_plus.imag()), 0.05);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.segment[i] == ContourQuadrature::Upper || g.segment[i] == ContourQuadrature::Lower)
                CHECK(std::abs(g.nodes[i].imag()) == eta);
    }
}

TEST_CASE("contour truncation reaches the tail bound") {
    const KernelContext ctx = KernelContext::make(0.2, 1.0, wigner_spectrum(100, 2));
    const ContourQuadrature g = build_gamma(ctx), G = build_Gamma(ctx);
    const auto re_nf = [&](cplx z) {
        double s = ctx.n * (z * z - 2.0 * ctx.u * z).real() / 2.0;
        for (double y : ctx.y.values()) s += std::log(std::abs(z - y));
        return s;
    };
    double peak_w = -INFINITY, peak_z = -INFINITY;
    for (int i = -400; i <= 400; ++i) {
        peak_w = std::max(peak_w, re_nf(cplx(G.offset, G.radius * i / 400.0)));
        peak_z = std::max(peak_z, -re_nf(cplx(g.centre + g.radius * i / 400.0, g.offset)));
    }
    CHECK(re_nf(cplx(G.offset, G.radius)) - peak_w < std::log(1e-18));
    CHECK(-re_nf(cplx(g.centre + g.radius, g.offset)) - peak_z < std::log(1e-18));
    CHECK(build_Gamma(KernelContext::make(0.0, 1.0, wigner_spectrum(20, 3))).offset == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("g_N: explicit sum equals the derivative form with f'(w)/z") {
    Stream rng({12, 0});
    const Spectrum y = uniform_spectrum(5, 4);
    for (int i = 0; i < 1000; ++i) {
        const cplx z(2 * rng.uniform() - 1, 0.1 + rng.uniform());
        const cplx w(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        const double centre = rng.uniform() - 0.5;
        const cplx a = g_N_sum(z, w, centre, 0.9, y), b = g_N_closed(z, w, centre, 0.9, y);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
    // confluent limit
    const cplx z(0.2, 0.6);
    const PotentialValue f = log_potential_fN(z, 0.1, 0.9, y);
    CHECK(std::abs(g_N_closed(z, z, 0.1, 0.9, y) - (f.d1 / z + f.d2)) < 1e-12);
    CHECK(std::abs(g_N_closed(z, z + 1e-7, 0.1, 0.9, y) - g_N_sum(z, z + 1e-7, 0.1, 0.9, y)) < 1e-10);
}

TEST_CASE("h has a removable singularity at tau = 0") {
    const cplx z(0.3, 0.8);
    const double c = 0.7;
    CHECK(std::abs(h_factor(z, 0.0, c) + z / c) < 1e-16);
    CHECK(std::abs(h_factor(z, 1e-9, c) - h_factor(z, 0.0, c)) < 1e-8);
    // direct formula where it is well conditioned
    for (double tau : {1e-3, 0.5, -2.0}) {
        const cplx direct = (1.0 - std::exp(tau * z / c)) / tau;
        CHECK(std::abs(h_factor(z, tau, c) - direct) < 1e-12 * std::abs(direct));
    }
    CHECK(std::abs(h_factor(z, 1e-6, c) - (1.0 - std::exp(1e-6 * z / c)) / 1e-6) < 1e-6);
}

TEST_CASE("contour kernel equals the residue formula") {
    for (std::uint64_t seed : {1u, 2u}) {
        const Spectrum y = uniform_spectrum(6, seed);
        for (double u : {0.0, 0.3}) {
            const KernelContext ctx = KernelContext::make(u, 1.0, y);
            DeformedKernelEvaluator ev(ctx);
            for (double tau : {-1.3, 0.0, 0.5, 2.0}) {
                const double ref = oracle::residue_kernel(tau, u, 1.0, y.vector(), ctx.rho(), ctx.omega0());
                const KernelEvaluation r = ev.evaluate(tau);
                CHECK(std::abs(r.value - ref) < 1e-10);
                CHECK(std::abs(r.imag_part) < 1e-10);
            }
        }
    }
}

TEST_CASE("separable evaluation equals the nested double sum") {
    const Spectrum y = uniform_spectrum(6, 9);
    const KernelContext ctx = KernelContext::make(0.2, 0.8, y);
    DeformedKernelEvaluator ev(ctx);
    const ContourQuadrature g = build_gamma(ctx, 8), G = build_Gamma(ctx, 8);
    for (double tau : {-0.7, 1.1}) {
        cplx nested = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t k = 0; k < G.size(); ++k) {
                const cplx z = g.nodes[i], w = G.nodes[k];
                const HG hg = eval_h_gN(z, w, tau, ctx);
                const cplx e = std::exp(double(ctx.n) * (log_potential_fN(w, ctx.u, ctx.a, y).value -
                                                         log_potential_fN(z, ctx.u, ctx.a, y).value));
                nested += g.weights[i] * G.weights[k] * hg.h * hg.g * e;
            }
        nested *= double(ctx.n) / (cplx(0, 2 * pi) * cplx(0, 2 * pi));
        CHECK(std::abs(ev.integral(tau, 8) - nested) < 1e-10);
    }
}

TEST_CASE("Gamma placement does not matter") {
    const Spectrum y = uniform_spectrum(6, 5);
    QuadratureSettings on_axis;
    on_axis.Gamma_real_part = 0.0;
    for (double u : {0.0, 0.35}) {
        const KernelContext a = KernelContext::make(u, 1.0, y);
        const KernelContext b = KernelContext::make(u, 1.0, y, on_axis);
        for (double tau : {-1.0, 0.4}) CHECK(std::abs(deformed_kernel(tau, a) - deformed_kernel(tau, b)) < 1e-8);
    }
}

TEST_CASE("panel doubling self-convergence at N=200") {
    const KernelContext ctx = KernelContext::make(0.0, 1.0, wigner_spectrum(200, 7));
    DeformedKernelEvaluator ev(ctx);
    for (double tau : {-3.0, 0.0, 1.5}) {
        const KernelEvaluation r = ev.evaluate(tau);
        CHECK(r.converged);
        CHECK(r.last_change < 1e-8);
        CHECK(std::abs(ev.integral(tau, 2 * r.panels) - cplx(r.value, r.imag_part)) < 1e-8);
        CHECK(std::abs(r.imag_part) < 1e-6);
    }
}

TEST_CASE("kernel near the sine kernel at N=400") {
    const KernelContext ctx = KernelContext::make(0.0, 1.0, wigner_spectrum(400, 8));
    CHECK(std::abs(deformed_kernel(0.0, ctx) - 1.0) < 0.05);
}

TEST_CASE("reflection-symmetric spectrum gives an even kernel at u = 0") {
    const Spectrum half = wigner_spectrum(40, 10);
    std::vector<double> sym;
    for (std::size_t i = 0; i < 20; ++i) sym.push_back(half[20 + i]);
    for (std::size_t i = 0; i < 20; ++i) sym.push_back(-half[20 + i]);
    const KernelContext ctx = KernelContext::make(0.0, 1.0, Spectrum::from_unsorted(sym));
    DeformedKernelEvaluator ev(ctx);
    for (double tau : {0.3, 1.7, 3.2}) CHECK(std::abs(ev.evaluate(tau).value - ev.evaluate(-tau).value) < 1e-9);
}

TEST_CASE("accuracy failure carries JSON diagnostics") {
    QuadratureSettings s;
    s.initial_panels = 1;
    s.max_nodes = 24 * 3;  // no room to double
    const KernelContext ctx = KernelContext::make(0.0, 1.0, wigner_spectrum(50, 11), s);
    try {
        deformed_kernel(0.5, ctx);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        const auto d = nlohmann::json::parse(e.diagnostics());
        CHECK(d["N"] == 50);
        CHECK(d.contains("history"));
    }
    CHECK_THROWS_AS(KernelContext::make(0.0, 0.0, wigner_spectrum(5, 1)), DomainError);
}

TEST_CASE("sine kernel") {
    CHECK(sine_kernel(0.0) == 1.0);
    CHECK(std::abs(sine_kernel(1.0)) < 1e-16);
    CHECK(sine_kernel(0.5) == doctest::Approx(2 / pi).epsilon(1e-15));
    CHECK(sine_kernel(5e-5) == doctest::Approx(std::sin(pi * 5e-5) / (pi * 5e-5)).epsilon(1e-15));
}

TEST_CASE("GUE kernel: Christoffel-Darboux vs direct sum") {
    // orthonormal polynomials for e^{-N x^2/2} from the monic Hermite recurrence
    const int n = 6;
    const auto direct = [&](double x, double y) {
        const double c = n;  // weight e^{-c x^2/2}
        std::vector<double> px(n), py(n);
        // p_k = He_k(sqrt(c) x) / sqrt(k! sqrt(2 pi / c))
        const auto he = [&](double t, std::vector<double>& p) {
            p[0] = 1;
            if (n > 1) p[1] = t;
            for (int k = 1; k + 1 < n; ++k) p[k + 1] = t * p[k] - k * p[k - 1];
        };
        he(std::sqrt(c) * x, px);
        he(std::sqrt(c) * y, py);
        double s = 0.0, fact = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k) fact *= k;
            s += px[k] * py[k] / (fact * std::sqrt(2 * pi / c));
        }
        return s * std::exp(-c * (x * x + y * y) / 4);
    };
    Stream rng({31, 0});
    for (int i = 0; i < 50; ++i) {
        const double x = 4 * rng.uniform() - 2, y = 4 * rng.uniform() - 2;
        CHECK(std::abs(gue_kernel(x, y, n) - direct(x, y)) < 1e-10);
        CHECK(std::abs(gue_kernel(x, x, n) - direct(x, x)) < 1e-10);
        CHECK(std::abs(gue_kernel(x, x + 1e-6, n) - direct(x, x + 1e-6)) < 1e-10);
    }
}

TEST_CASE("GUE kernel trace and sine limit") {
    for (int n : {1, 6, 50, 200}) {
        const double trace = oracle::integrate([&](double x) { return gue_kernel(x, x, n); }, -10.0, 10.0, 1000);
        CHECK(std::abs(trace - n) < 1e-8 * n);
    }
    double prev = INFINITY;
    for (int n : {50, 100, 200}) {
        const double rho = 1 / pi;  // semicircle of radius 2 at 0
        double worst = 0.0;
        for (int i = -16; i <= 16; ++i) {
            const double tau = 0.25 * i;
            worst = std::max(worst, std::abs(gue_kernel(0.0, tau / (n * rho), n) / (n * rho) - sine_kernel(tau)));
        }
        CHECK(worst < prev);
        prev = worst;
    }
    CHECK(prev <= 0.02);
}

TEST_CASE("correlation determinants") {
    const auto sk = [](double x, double y) { return sine_kernel(x - y); };
    const std::vector<double> one{0.4};
    CHECK(correlation_det(one, sk) == 1.0);
    const std::vector<double> pair{0.0, 0.5};
    CHECK(correlation_det(pair, sk) == doctest::Approx(1 - 4 / (pi * pi)).epsilon(1e-14));
    CHECK(correlation_det(pair, sk) == doctest::Approx(0.594715).epsilon(1e-6));
    const std::vector<double> same{0.3, 0.3};
    CHECK(std::abs(correlation_det(same, sk)) < 1e-15);
    // quadratic vanishing as points merge
    const std::vector<double> near1{0.0, 1e-3}, near2{0.0, 2e-3};
    CHECK(correlation_det(near2, sk) / correlation_det(near1, sk) == doctest::Approx(4.0).epsilon(1e-4));
    const std::vector<double> tri{0.1, 0.9, -0.4}, perm{-0.4, 0.1, 0.9};
    CHECK(correlation_det(tri, sk) == doctest::Approx(correlation_det(perm, sk)).epsilon(1e-13));
    CHECK_THROWS_AS(correlation_det(std::vector<double>(13, 0.0), sk), DomainError);

    Stream rng({41, 0});
    for (int m = 2; m <= 6; ++m)
        for (int t = 0; t < 20; ++t) {
            std::vector<double> x(m);
            for (auto& v : x) v = 3 * rng.uniform() - 1.5;
            CHECK(correlation_det(x, [](double a, double b) { return gue_kernel(a, b, 8); }) >= -1e-10);
        }
}

TEST_CASE("biorthogonal kernel on polynomials") {
    const BiorthogonalKernel::Basis basis{[](double) { return 1.0; }, [](double x) { return x; }};
    const BiorthogonalKernel k(basis, basis, 0.0, 1.0);
    Eigen::Matrix2d a;
    a << 1, 0.5, 0.5, 1.0 / 3;
    CHECK((k.gram() - a).norm() < 1e-14);
    CHECK(oracle::integrate([&](double t) { return k(t, t); }, 0.0, 1.0, 20) == doctest::Approx(2.0).epsilon(1e-12));
    for (double t : {0.1, 0.6})
        for (double s : {0.3, 0.9}) {
            const double proj = oracle::integrate([&](double r) { return k(t, r) * k(r, s); }, 0.0, 1.0, 20);
            CHECK(std::abs(proj - k(t, s)) < 1e-8);
        }
    CHECK(k.fredholm_det([](double) { return 0.0; }) == doctest::Approx(1.0));
    const BiorthogonalKernel::Basis degenerate{[](double x) { return x; }, [](double x) { return 2 * x; }};
    CHECK_THROWS_AS(BiorthogonalKernel(degenerate, degenerate, 0.0, 1.0), NumericalError);
}

TEST_CASE("Fredholm ratio: brute force against the finite-rank determinant") {
    const BiorthogonalKernel::Basis phi{[](double) { return 1.0; }, [](double x) { return x; }};
    const BiorthogonalKernel k2(phi, phi, 0.0, 1.0);
    const FredholmRatio r = fredholm_ratio_check(k2, [](double x) { return x; });
    CHECK(r.gap < 1e-10);
    // exact: Z[1+g]/Z[1] = det(A + B)/det(A), B_jk = int x^{j+k+1}
    Eigen::Matrix2d b;
    b << 0.5, 1.0 / 3, 1.0 / 3, 0.25;
    CHECK(r.lhs == doctest::Approx((k2.gram() + b).determinant() / k2.gram().determinant()).epsilon(1e-12));
    const FredholmRatio c = fredholm_ratio_check(k2, [](double) { return 0.7; });
    CHECK(c.lhs == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
    CHECK(c.rhs == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
    const FredholmRatio zero = fredholm_ratio_check(k2, [](double) { return 0.0; });
    CHECK(zero.lhs == doctest::Approx(1.0));
    CHECK(zero.rhs == doctest::Approx(1.0));
}

TEST_CASE("one-point function equals N times the marginal") {
    const BiorthogonalKernel::Basis phi{[](double x) { return std::exp(-x); }, [](double x) { return std::exp(-2 * x); }};
    const BiorthogonalKernel::Basis psi{[](double) { return 1.0; }, [](double x) { return std::cos(x); }};
    const BiorthogonalKernel k(phi, psi, 0.0, 2.0);
    // u_N(x1, x2) = det(phi_j(x_k)) det(psi_j(x_k)) / (2! det A)
    const auto joint = [&](double x1, double x2) {
        const double dp = phi[0](x1) * phi[1](x2) - phi[0](x2) * phi[1](x1);
        const double dq = psi[0](x1) * psi[1](x2) - psi[0](x2) * psi[1](x1);
        return dp * dq / (2.0 * k.gram().determinant());
    };
    for (double x : {0.2, 1.0, 1.7}) {
        const double marginal = oracle::integrate([&](double y) { return joint(x, y); }, 0.0, 2.0, 40);
        CHECK(std::abs(k(x, x) - 2 * marginal) < 1e-8);
    }
}
