#include "dgue/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "dgue/error.hpp"
#include "dgue/stats.hpp"

namespace dgue {

// ---------------------------------------------------------------------------
// HermitianMatrix

double HermitianMatrix::hermitian_defect(const Eigen::MatrixXcd& m) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double defect = 0.0;
    for (Eigen::Index j = 0; j < m.rows(); ++j)
        for (Eigen::Index k = j; k < m.cols(); ++k)
            defect = std::max(defect, std::abs(m(j, k) - std::conj(m(k, j))));
    return defect / scale;
}

HermitianMatrix HermitianMatrix::from_matrix(Eigen::MatrixXcd entries, double tolerance) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw DomainError("HermitianMatrix: matrix must be square and non-empty");
    if (tolerance == 0.0) {
        for (Eigen::Index j = 0; j < entries.rows(); ++j) {
            if (entries(j, j).imag() != 0.0)
                throw DomainError("HermitianMatrix: diagonal entry is not real");
            for (Eigen::Index k = j + 1; k < entries.cols(); ++k)
                if (entries(j, k) != std::conj(entries(k, j)))
                    throw DomainError("HermitianMatrix: entries are not conjugate symmetric");
        }
        return HermitianMatrix(std::move(entries));
    }
    if (hermitian_defect(entries) > tolerance)
        throw DomainError("HermitianMatrix: Hermitian defect exceeds tolerance");
    for (Eigen::Index j = 0; j < entries.rows(); ++j) {
        entries(j, j) = cplx(entries(j, j).real(), 0.0);
        for (Eigen::Index k = j + 1; k < entries.cols(); ++k) entries(k, j) = std::conj(entries(j, k));
    }
    return HermitianMatrix(std::move(entries));
}

HermitianMatrix HermitianMatrix::zero(int n) {
    if (n < 1) throw DomainError("HermitianMatrix: dimension must be positive");
    return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n));
}

// ---------------------------------------------------------------------------
// Element laws

std::string to_string(LawKind kind) {
    switch (kind) {
        case LawKind::Bernoulli: return "bernoulli";
        case LawKind::Uniform: return "uniform";
        case LawKind::Gaussian: return "gaussian";
        case LawKind::TwoPointAsymmetric: return "two-point";
    }
    return "unknown";
}

LawKind parse_law_kind(const std::string& name) {
    if (name == "bernoulli") return LawKind::Bernoulli;
    if (name == "uniform") return LawKind::Uniform;
    if (name == "gaussian") return LawKind::Gaussian;
    if (name == "two-point" || name == "two_point") return LawKind::TwoPointAsymmetric;
    throw ConfigError("unknown law kind '" + name + "' (expected bernoulli, uniform, gaussian, two-point)");
}

ElementLaw::ElementLaw(LawKind kind, double variance, double q) : kind_(kind), variance_(variance), q_(q) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw ConfigError("ElementLaw: variance must be finite and non-negative");
    if (kind == LawKind::TwoPointAsymmetric && !(q > 0.0 && q < 1.0))
        throw ConfigError("ElementLaw: two-point asymmetry q must lie in (0, 1)");
    moment_bound_ = absolute_moment(moment_order_);
}

ElementLaw ElementLaw::bernoulli(double variance) { return ElementLaw(LawKind::Bernoulli, variance, 0.5); }
ElementLaw ElementLaw::uniform(double variance) { return ElementLaw(LawKind::Uniform, variance, 0.5); }
ElementLaw ElementLaw::gaussian(double variance) { return ElementLaw(LawKind::Gaussian, variance, 0.5); }
ElementLaw ElementLaw::two_point(double variance, double q) {
    return ElementLaw(LawKind::TwoPointAsymmetric, variance, q);
}

ElementLaw ElementLaw::make(LawKind kind, double variance, const std::vector<double>& params) {
    switch (kind) {
        case LawKind::Bernoulli: return bernoulli(variance);
        case LawKind::Uniform: return uniform(variance);
        case LawKind::Gaussian: return gaussian(variance);
        case LawKind::TwoPointAsymmetric: return two_point(variance, params.empty() ? 0.25 : params[0]);
    }
    throw ConfigError("ElementLaw: unknown kind");
}

ElementLaw ElementLaw::with_moment_order(double p) const {
    if (!(p > 0.0)) throw ConfigError("ElementLaw: moment order must be positive");
    ElementLaw copy = *this;
    copy.moment_order_ = p;
    copy.moment_bound_ = copy.absolute_moment(p);
    return copy;
}

double ElementLaw::absolute_moment(double p) const {
    const double sd = std::sqrt(variance_);
    switch (kind_) {
        case LawKind::Bernoulli: return std::pow(sd, p);
        case LawKind::Uniform: {
            const double half_width = std::sqrt(3.0) * sd;
            return std::pow(half_width, p) / (p + 1.0);
        }
        case LawKind::Gaussian:
            return std::pow(sd, p) * std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) /
                   std::sqrt(std::numbers::pi);
        case LawKind::TwoPointAsymmetric: {
            const double b = std::sqrt(variance_ * (1.0 - q_) / q_);
            const double c = std::sqrt(variance_ * q_ / (1.0 - q_));
            return q_ * std::pow(b, p) + (1.0 - q_) * std::pow(c, p);
        }
    }
    return 0.0;
}

double ElementLaw::sample(Stream& rng) const {
    const double sd = std::sqrt(variance_);
    switch (kind_) {
        case LawKind::Bernoulli: return rng.uniform() < 0.5 ? -sd : sd;
        case LawKind::Uniform: return std::sqrt(3.0) * sd * (2.0 * rng.uniform() - 1.0);
        case LawKind::Gaussian: return sd * rng.normal();
        case LawKind::TwoPointAsymmetric:
            return rng.uniform() < q_ ? std::sqrt(variance_ * (1.0 - q_) / q_)
                                      : -std::sqrt(variance_ * q_ / (1.0 - q_));
    }
    return 0.0;
}

WignerSpec WignerSpec::standard(LawKind kind, const std::vector<double>& params) {
    return WignerSpec{ElementLaw::make(kind, kTotalVariance / 2.0, params),
                      ElementLaw::make(kind, kTotalVariance / 2.0, params),
                      ElementLaw::make(kind, kTotalVariance, params)};
}

void WignerSpec::validate() const {
    constexpr double tol = 1e-12;
    const double off = off_diagonal_real.variance() + off_diagonal_imag.variance();
    if (std::abs(off - kTotalVariance) > tol)
        throw ConfigError("WignerSpec: off-diagonal real + imaginary variance must equal 1/4");
    if (std::abs(diagonal.variance() - kTotalVariance) > tol)
        throw ConfigError("WignerSpec: diagonal variance must equal 1/4");
}

// ---------------------------------------------------------------------------
// Sampling

HermitianMatrix sample_wigner(const WignerSpec& spec, int n, RngSeed seed) {
    if (n < 1) throw ConfigError("sample_wigner: N must be at least 1");
    spec.validate();
    Stream rng(seed);
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j) {
        m(j, j) = cplx(spec.diagonal.sample(rng), 0.0);
        for (int k = j + 1; k < n; ++k) {
            const double re = spec.off_diagonal_real.sample(rng);
            const double im = spec.off_diagonal_imag.sample(rng);
            m(j, k) = cplx(re, im);
            m(k, j) = cplx(re, -im);
        }
    }
    return HermitianMatrix::from_matrix(std::move(m));
}

HermitianMatrix sample_gue(int n, RngSeed seed) {
    if (n < 1) throw ConfigError("sample_gue: N must be at least 1");
    Stream rng(seed);
    const double off_sd = std::sqrt(0.5);
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j) {
        m(j, j) = cplx(rng.normal(), 0.0);
        for (int k = j + 1; k < n; ++k) {
            const double re = off_sd * rng.normal();
            const double im = off_sd * rng.normal();
            m(j, k) = cplx(re, im);
            m(k, j) = cplx(re, -im);
        }
    }
    return HermitianMatrix::from_matrix(std::move(m));
}

HermitianMatrix assemble_deformed(const HermitianMatrix& w, double a, RngSeed seed) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("assemble_deformed: a must be >= 0");
    const int n = w.dimension();
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    if (a == 0.0) return HermitianMatrix::from_matrix(w.matrix() * inv_sqrt_n);
    const HermitianMatrix v = sample_gue(n, seed);
    Eigen::MatrixXcd m = (w.matrix() + a * v.matrix()) * inv_sqrt_n;
    return HermitianMatrix::from_matrix(std::move(m));
}

// ---------------------------------------------------------------------------
// Convolution check

namespace {

ConvolutionComponent compare(std::string name, double expected, std::vector<double> matrix_route,
                             std::vector<double> direct_route) {
    auto variance_and_se = [](const std::vector<double>& xs) {
        RunningStats sq;
        for (double x : xs) sq.add(x * x);
        // SE of the second moment about the known mean 0
        return std::pair{sq.mean(), sq.standard_error()};
    };
    ConvolutionComponent c;
    c.name = std::move(name);
    c.expected_variance = expected;
    std::tie(c.matrix_variance, c.matrix_variance_se) = variance_and_se(matrix_route);
    std::tie(c.direct_variance, c.direct_variance_se) = variance_and_se(direct_route);
    c.ks_critical = ks_two_sample_critical(matrix_route.size(), direct_route.size(), 1e-3);
    c.ks_statistic = ks_distance_two_sample(std::move(matrix_route), std::move(direct_route));
    const bool matrix_ok = std::abs(c.matrix_variance - expected) <= 4.0 * c.matrix_variance_se + 1e-15;
    const bool direct_ok = std::abs(c.direct_variance - expected) <= 4.0 * c.direct_variance_se + 1e-15;
    c.pass = matrix_ok && direct_ok && c.ks_statistic <= c.ks_critical;
    return c;
}

}  // namespace

ConvolutionReport convolution_equivalence_check(const WignerSpec& spec, double a, int n, int trials,
                                                RngSeed seed) {
    if (trials < 1000) throw ConfigError("convolution_equivalence_check: trials must be >= 1000");
    if (n < 2) throw ConfigError("convolution_equivalence_check: N must be at least 2");
    if (!(a >= 0.0)) throw DomainError("convolution_equivalence_check: a must be >= 0");
    spec.validate();

    std::vector<double> diag_m, re_m, im_m;
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    for (int t = 0; t < trials; ++t) {
        const RngSeed trial = seed.substream(static_cast<std::uint64_t>(t));
        const HermitianMatrix w = sample_wigner(spec, n, trial.substream(0));
        const HermitianMatrix m = assemble_deformed(w, a, trial.substream(1));
        // entries of W + aV: undo the 1/sqrt(N)
        diag_m.push_back(m(0, 0).real() * sqrt_n);
        re_m.push_back(m(0, 1).real() * sqrt_n);
        im_m.push_back(m(0, 1).imag() * sqrt_n);
    }

    Stream rng(seed.substream(0xD1EC7ull));
    std::vector<double> diag_d, re_d, im_d;
    const double off_sd = a / std::sqrt(2.0);  // phi_a has variance a^2/2
    const double diag_sd = a;                  // phi_{a sqrt 2} has variance a^2
    for (int t = 0; t < trials; ++t) {
        diag_d.push_back(spec.diagonal.sample(rng) + diag_sd * rng.normal());
        re_d.push_back(spec.off_diagonal_real.sample(rng) + off_sd * rng.normal());
        im_d.push_back(spec.off_diagonal_imag.sample(rng) + off_sd * rng.normal());
    }

    ConvolutionReport report;
    report.a = a;
    report.n = n;
    report.trials = trials;
    report.components.push_back(compare("diagonal", spec.diagonal.variance() + a * a, diag_m, diag_d));
    report.components.push_back(
        compare("off_diagonal_real", spec.off_diagonal_real.variance() + a * a / 2.0, re_m, re_d));
    report.components.push_back(
        compare("off_diagonal_imag", spec.off_diagonal_imag.variance() + a * a / 2.0, im_m, im_d));
    report.pass = std::all_of(report.components.begin(), report.components.end(),
                              [](const ConvolutionComponent& c) { return c.pass; });
    return report;
}

}  // namespace dgue
