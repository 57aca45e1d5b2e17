#include "dgue/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "dgue/error.hpp"
#include "dgue/quadrature.hpp"

namespace dgue {

using std::numbers::pi;

Spectrum::Spectrum(std::vector<double> ascending) : values_(std::move(ascending)) {
    if (!std::is_sorted(values_.begin(), values_.end()))
        throw DomainError("Spectrum: values must be ascending");
}

Spectrum Spectrum::from_unsorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return Spectrum(std::move(values));
}

double Spectrum::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double Spectrum::sum_of_squares() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
}

Spectrum hermitian_eigenvalues(const HermitianMatrix& h) {
    if (HermitianMatrix::hermitian_defect(h.matrix()) > 1e-12)
        throw DomainError("hermitian_eigenvalues: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eigenvalues: QR iteration did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return Spectrum::from_unsorted(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

double semicircle_rho(double u, double a) {
    if (!(a > 0.0)) throw DomainError("semicircle_rho: a must be positive");
    const double r2 = 1.0 + 4.0 * a * a;
    const double d = r2 - u * u;
    return d > 0.0 ? 2.0 / (pi * r2) * std::sqrt(d) : 0.0;
}

double semicircle_sigma(double t) {
    const double d = 1.0 - t * t;
    return d > 0.0 ? 2.0 / pi * std::sqrt(d) : 0.0;
}

PotentialValue log_potential_fN(cplx z, double u, double a, const Spectrum& y) {
    if (!(a > 0.0)) throw DomainError("log_potential_fN: a must be positive");
    if (y.size() == 0) throw DomainError("log_potential_fN: empty spectrum");
    const double inv_n = 1.0 / static_cast<double>(y.size());
    const double a2 = a * a;
    cplx logs = 0.0, d1 = 0.0, d2 = 0.0;
    for (double yj : y.values()) {
        const cplx d = z - yj;
        if (std::abs(d) < 1e-14) {
            std::ostringstream msg;
            msg << "log_potential_fN: z is at an eigenvalue (y=" << yj << ")";
            throw DomainError(msg.str());
        }
        const cplx r = 1.0 / d;
        logs += std::log(d);
        d1 += r;
        d2 -= r * r;
    }
    return PotentialValue{(z * z - 2.0 * u * z) / (2.0 * a2) + logs * inv_n, (z - u) / a2 + d1 * inv_n,
                          1.0 / a2 + d2 * inv_n};
}

namespace {

bool on_cut(cplx z) { return z.imag() == 0.0 && std::abs(z.real()) <= 1.0; }

// sqrt(z-1) sqrt(z+1), analytic off [-1, 1] and ~ z at infinity
cplx cut_sqrt(cplx z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

}  // namespace

PotentialValue limit_potential_f(cplx z, double u, double a) {
    if (!(a > 0.0)) throw DomainError("limit_potential_f: a must be positive");
    if (on_cut(z)) throw DomainError("limit_potential_f: z lies on the branch cut [-1, 1]");
    // t = cos(phi) removes the square-root endpoint behaviour of sigma
    const QuadratureRule& rule = gauss_legendre(64);
    cplx integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double phi = pi / 2.0 * (rule.nodes[i] + 1.0);
        const double s = std::sin(phi);
        integral += rule.weights[i] * (pi / 2.0) * (2.0 / pi) * s * s * std::log(z - std::cos(phi));
    }
    const double a2 = a * a;
    const cplx root = cut_sqrt(z);
    const cplx stieltjes = 2.0 * (z - root);
    const cplx stieltjes_d = 2.0 * (1.0 - z / root);
    return PotentialValue{(z * z - 2.0 * u * z) / (2.0 * a2) + integral, (z - u) / a2 + stieltjes,
                          1.0 / a2 + stieltjes_d};
}

cplx joukowski(cplx w) { return 0.5 * (w + 1.0 / w); }

cplx joukowski_inverse(cplx z) { return z + cut_sqrt(z); }

SaddleData saddle_data(double u, double a) {
    if (!(a > 0.0)) throw DomainError("saddle_data: a must be positive");
    if (std::abs(u) > std::sqrt(0.5 + 2.0 * a * a))
        throw DomainError("saddle_data: |u| exceeds sqrt(1/2 + 2a^2)");
    SaddleData s;
    s.u = u;
    s.a = a;
    const double r = std::sqrt(1.0 + 4.0 * a * a);
    s.theta_c = std::acos(u / r);
    s.w_c_plus = std::polar(r, s.theta_c);
    s.w_c_minus = std::polar(r, -s.theta_c);
    s.z_c_plus = joukowski(s.w_c_plus);
    s.z_c_minus = joukowski(s.w_c_minus);
    s.omega0 = pi * (1.0 + 2.0 * a * a) / (2.0 * a * a) * std::cos(s.theta_c) / std::sin(s.theta_c);
    s.rho_u = semicircle_rho(u, a);
    s.critical_residual = std::max(std::abs(limit_potential_f(s.z_c_plus, u, a).d1),
                                   std::abs(limit_potential_f(s.z_c_minus, u, a).d1));
    if (!(s.critical_residual < 1e-12))
        throw NumericalError("saddle_data: critical point residual above 1e-12");
    const double scale = a * a * s.rho_u;
    const double gap = std::max(std::abs(s.z_c_plus / scale - cplx(s.omega0, pi)),
                                std::abs(s.z_c_minus / scale - cplx(s.omega0, -pi)));
    if (!(gap < 1e-10 * std::max(1.0, std::abs(s.omega0) + pi)))
        throw NumericalError("saddle_data: z_c/(a^2 rho) differs from omega0 +- i pi");
    return s;
}

double log_potential_deviation(const Spectrum& y, double u, double a) {
    double worst = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double re = -3.0 + 0.25 * i;
        for (double im : {-1.0, -0.5, 0.5, 1.0}) {
            const cplx z(re, im);
            worst = std::max(worst, std::abs(log_potential_fN(z, u, a, y).value -
                                             limit_potential_f(z, u, a).value));
        }
    }
    return worst;
}

}  // namespace dgue
