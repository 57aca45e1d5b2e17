#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dgue {

/// Welford accumulator for mean and variance.
class RunningStats {
public:
    void add(double x);
    void merge(const RunningStats& other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance (0 when count < 2).
    double variance() const;
    /// Standard error of the mean.
    double standard_error() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// One-sample Kolmogorov-Smirnov distance of `samples` (any order) against `cdf`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

/// Approximate critical value of the two-sample KS statistic at level alpha.
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

/// Piecewise-linear interpolant of a tabulated, increasing-x function; clamps outside the table.
class TabulatedFunction {
public:
    TabulatedFunction(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
};

/// Normalised histogram: bin densities so that sum(density * width) = fraction inside [lo, hi).
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> density;
    std::size_t total = 0;

    double width() const { return (hi - lo) / static_cast<double>(density.size()); }
    double center(std::size_t bin) const { return lo + (static_cast<double>(bin) + 0.5) * width(); }
};

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

}  // namespace dgue
