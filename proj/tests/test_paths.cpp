#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dgue/error.hpp"
#include "dgue/paths.hpp"
#include "dgue/stats.hpp"
#include "oracles.hpp"

using namespace dgue;
using std::numbers::pi;

TEST_CASE("heat kernel") {
    CHECK(heat_kernel(1.0, 0.3, 0.3) == doctest::Approx(1 / std::sqrt(2 * pi)).epsilon(1e-15));
    CHECK(oracle::integrate([](double x) { return heat_kernel(0.7, x, 0.2); }, -15, 15) == doctest::Approx(1.0).epsilon(1e-13));
    for (double x : {-1.0, 0.5})
        for (double y : {0.0, 2.0}) {
            const double ck = oracle::integrate([&](double r) { return heat_kernel(0.4, x, r) * heat_kernel(1.1, r, y); }, -20, 20, 400);
            CHECK(std::abs(ck - heat_kernel(1.5, x, y)) < 1e-10);
        }
    CHECK_THROWS_AS(heat_kernel(0.0, 0, 0), DomainError);
}

TEST_CASE("single path: Brownian bridge density") {
    PathConfig cfg{{0.4}, {}, 0.8, 2.0};
    for (double x : {-1.0, 0.4, 1.3}) {
        // bridge from 0.4 at time 0 to 0 at time S+T, observed at time S
        const double mean = 0.4 + (0.0 - 0.4) * 0.8 / 2.8, var = 0.8 * 2.0 / 2.8;
        const double ref = std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * pi * var);
        CHECK(km_conditional_density({x}, cfg) == doctest::Approx(ref).epsilon(1e-12));
        cfg.T = 1e8;
        CHECK(std::abs(km_conditional_density({x}, cfg) - heat_kernel(0.8, 0.4, x)) < 1e-6);
        cfg.T = 2.0;
    }
}

TEST_CASE("two paths: normalisation and reflection symmetry") {
    const PathConfig cfg{{-1.0, 1.0}, {}, 1.0, 1.0};
    // ordered pairs x1 < x2, substitution x2 = x1 + r
    const double mass = oracle::integrate([&](double x1) {
        return oracle::integrate([&](double r) { return km_conditional_density({x1, x1 + r}, cfg); }, 0.0, 14.0, 40);
    }, -8.0, 9.0, 60);
    CHECK(std::abs(mass - 1.0) < 1e-6);

    const PathConfig sym{{-1.0, 1.0}, {-0.5, 0.5}, 1.0, 1.0};
    for (double x1 : {-1.2, 0.1})
        for (double x2 : {0.3, 1.9})
            if (x1 < x2) CHECK(km_conditional_density({x1, x2}, sym) == doctest::Approx(km_conditional_density({-x2, -x1}, sym)).epsilon(1e-12));
}

TEST_CASE("limit density q_S") {
    CHECK(km_limit_density_qS({0.7}, {0.1}, 0.5) == doctest::Approx(heat_kernel(0.5, 0.1, 0.7)).epsilon(1e-14));
    const std::vector<double> y{-1.0, 1.0};
    // integral over R^2 of the symmetric density is 2!
    const double mass = oracle::integrate([&](double x1) {
        return oracle::integrate([&](double x2) { return km_limit_density_qS({x1, x2}, y, 1.0); }, -10.0, 10.0, 80);
    }, -10.0, 10.0, 80);
    CHECK(std::abs(mass / 2.0 - 1.0) < 1e-6);
    CHECK_THROWS_AS(km_limit_density_qS({0, 1}, {1, 1}, 1.0), DomainError);

    const std::vector<double> y3{-0.5, 0.2, 1.0}, x{0.3, -0.4, 1.1}, xp{-0.4, 1.1, 0.3};
    CHECK(km_limit_density_qS(x, y3, 0.6) == doctest::Approx(km_limit_density_qS(xp, y3, 0.6)).epsilon(1e-12));
    CHECK(km_limit_density_qS({0.2, 0.2, 0.9}, y3, 0.6) == 0.0);
    CHECK(km_limit_density_qS({-3.0, 0.0, 3.0}, y3, 1e-3) >= 0.0);
}

TEST_CASE("conditional density converges to q_S as T grows") {
    const std::vector<double> y{-1.0, 1.0};
    double prev = INFINITY;
    for (double t : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        double gap = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) {
                const double x1 = -3 + 6.0 * i / 19, x2 = -3 + 6.0 * j / 19;
                if (x1 >= x2) continue;
                gap = std::max(gap, std::abs(km_conditional_density({x1, x2}, PathConfig{y, {}, 1.0, t}) -
                                             km_limit_density_qS({x1, x2}, y, 1.0)));
            }
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("eigenvalue density is q_S at S = a^2/N") {
    const Spectrum y({-0.3, 0.2, 0.9});
    const std::vector<double> x{-0.1, 0.4, 0.5};
    CHECK(eigen_density_rhoN(x, y, 0.8) == km_limit_density_qS(x, y.vector(), 0.8 * 0.8 / 3.0));
    // a -> 0: mass concentrates at y
    const Spectrum y2({-1.0, 1.0});
    const double a = 0.01;
    const double mass = oracle::integrate([&](double x1) {
        return oracle::integrate([&](double x2) { return eigen_density_rhoN({x1, x2}, y2, a); }, 0.9, 1.1, 20);
    }, -1.1, -0.9, 20);
    CHECK(mass > 0.99);
}

TEST_CASE("Dyson motion basics") {
    RunningStats one;
    for (std::uint64_t p = 0; p < 10000; ++p) {
        const DysonResult r = dyson_evolve({0.3}, 0.5, RngSeed{3, p}, DysonSettings{0.01});
        one.add((r.values[0] - 0.3) * (r.values[0] - 0.3));
    }
    CHECK(std::abs(one.mean() - 0.5) < 3 * one.standard_error());

    RunningStats sum;
    const std::vector<double> y{-1.0, 0.0, 1.5};
    for (std::uint64_t p = 0; p < 2000; ++p) {
        const DysonResult r = dyson_evolve(y, 0.3, RngSeed{4, p});
        CHECK(r.min_gap > 0.0);
        CHECK(std::is_sorted(r.values.begin(), r.values.end()));
        sum.add(r.values[0] + r.values[1] + r.values[2]);
    }
    CHECK(std::abs(sum.mean() - 0.5) < 4 * sum.standard_error());
    CHECK(sum.variance() == doctest::Approx(0.9).epsilon(0.1));

    const DysonResult a = dyson_evolve(y, 0.1, RngSeed{5, 5}), b = dyson_evolve(y, 0.1, RngSeed{5, 5});
    CHECK(a.values == b.values);
    CHECK_THROWS_AS(dyson_evolve(y, 0.1, RngSeed{}, DysonSettings{1.0}), ConfigError);
    CHECK_THROWS_AS(dyson_evolve({1.0, 0.0}, 0.1, RngSeed{}), DomainError);
}

TEST_CASE("Dyson stiffness error") {
    DysonSettings s;
    s.gap_factor = 1e6;
    s.max_retries = 0;
    s.dt = 0.5;
    int failures = 0;
    for (std::uint64_t p = 0; p < 300; ++p) {
        try {
            dyson_evolve({0.0, 1.0}, 1.0, RngSeed{1, p}, s);
        } catch (const NumericalError&) {
            ++failures;
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("pair marginals of q_S") {
    const std::vector<double> y{-1.0, 1.0};
    const PairMarginals m = pair_marginals([&](double a, double b) { return km_limit_density_qS({a, b}, y, 0.5); }, -6.0, 6.0);
    CHECK(m.total_mass == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(m.lower(6.0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(m.upper(6.0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(m.lower(0.0) > m.upper(0.0));
}
