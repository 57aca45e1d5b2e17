#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dgue/hermitian.hpp"
#include "dgue/rng.hpp"

namespace dgue {

enum class LawKind { Bernoulli, Uniform, Gaussian, TwoPointAsymmetric };

std::string to_string(LawKind kind);
LawKind parse_law_kind(const std::string& name);

/// Zero-mean real entry law with a declared variance and a finite p-th absolute moment.
///
/// - Bernoulli: +-sqrt(variance) with probability 1/2 each.
/// - Uniform: uniform on [-sqrt(3 variance), sqrt(3 variance)].
/// - Gaussian: N(0, variance).
/// - TwoPointAsymmetric: value b with probability q and -c with probability 1 - q,
///   b = sqrt(variance (1-q)/q), c = sqrt(variance q/(1-q)); mean 0 for every q in (0,1).
class ElementLaw {
public:
    static ElementLaw bernoulli(double variance);
    static ElementLaw uniform(double variance);
    static ElementLaw gaussian(double variance);
    static ElementLaw two_point(double variance, double q);
    /// The law named `kind` with the given variance; `params` carries extra shape
    /// parameters (TwoPointAsymmetric: q, default 0.25).
    static ElementLaw make(LawKind kind, double variance, const std::vector<double>& params = {});

    LawKind kind() const { return kind_; }
    double variance() const { return variance_; }
    double moment_order() const { return moment_order_; }
    /// Exact E|X|^p at p = moment_order().
    double moment_bound() const { return moment_bound_; }
    double asymmetry() const { return q_; }

    /// Exact E|X|^p for this law.
    double absolute_moment(double p) const;

    ElementLaw with_moment_order(double p) const;

    double sample(Stream& rng) const;

private:
    ElementLaw(LawKind kind, double variance, double q);

    LawKind kind_;
    double variance_;
    double q_ = 0.5;
    double moment_order_ = 8.0;
    double moment_bound_ = 0.0;
};

/// Entry laws of a Hermitian Wigner matrix. Total entry variance E|w_jk|^2 is 1/4 for every
/// j <= k; the diagonal imaginary part is identically zero.
struct WignerSpec {
    static constexpr double kTotalVariance = 0.25;

    ElementLaw off_diagonal_real;
    ElementLaw off_diagonal_imag;
    ElementLaw diagonal;

    /// Off-diagonal variance split evenly (1/8 per component), diagonal variance 1/4.
    static WignerSpec standard(LawKind kind, const std::vector<double>& params = {});

    /// Throws ConfigError when the variances do not match kTotalVariance.
    void validate() const;
};

/// Hermitian W with independent upper-triangle entries; deterministic in `seed`.
HermitianMatrix sample_wigner(const WignerSpec& spec, int n, RngSeed seed);

/// GUE with density proportional to exp(-Tr V^2 / 2): diagonal N(0,1), off-diagonal
/// real and imaginary parts N(0,1/2).
HermitianMatrix sample_gue(int n, RngSeed seed);

/// M = (W + a V) / sqrt(N) with a fresh GUE V drawn from `seed`. a = 0 returns W / sqrt(N).
HermitianMatrix assemble_deformed(const HermitianMatrix& w, double a, RngSeed seed);

/// Comparison of the matrix route (W + aV) against direct draws from the convolved laws.
struct ConvolutionComponent {
    std::string name;
    double expected_variance = 0.0;
    double matrix_variance = 0.0;
    double direct_variance = 0.0;
    double matrix_variance_se = 0.0;
    double direct_variance_se = 0.0;
    double ks_statistic = 0.0;
    double ks_critical = 0.0;
    bool pass = false;
};

struct ConvolutionReport {
    double a = 0.0;
    int n = 0;
    int trials = 0;
    std::vector<ConvolutionComponent> components;
    bool pass = false;
};

/// Checks that entries of W + aV follow phi_a * P off the diagonal (variance gain a^2/2 per
/// component) and phi_{a sqrt 2} * P on the diagonal (gain a^2). Requires trials >= 1000.
ConvolutionReport convolution_equivalence_check(const WignerSpec& spec, double a, int n,
                                                int trials, RngSeed seed);

}  // namespace dgue
