#pragma once

#include <complex>
#include <vector>

#include "dgue/hermitian.hpp"
#include "dgue/spectrum.hpp"

namespace dgue {

/// Eigenvalues of a Hermitian matrix, ascending. Input is checked to 1e-12 relative defect.
Spectrum hermitian_eigenvalues(const HermitianMatrix& h);

/// Semicircle density of radius sqrt(1+4a^2): 2/(pi(1+4a^2)) sqrt((1+4a^2-u^2)_+).
double semicircle_rho(double u, double a);

/// Unit semicircle (2/pi) sqrt(1-t^2) on [-1, 1].
double semicircle_sigma(double t);

/// Value with first and second derivative.
struct PotentialValue {
    cplx value;
    cplx d1;
    cplx d2;
};

/// (z^2 - 2uz)/2a^2 + (1/N) sum log(z - y_j), principal logarithms.
/// Throws DomainError when z is within 1e-14 of some y_j.
PotentialValue log_potential_fN(cplx z, double u, double a, const Spectrum& y);

/// (z^2 - 2uz)/2a^2 + int log(z - t) sigma(t) dt for z off [-1, 1].
/// d2 is filled from the closed form of the derivative as well.
PotentialValue limit_potential_f(cplx z, double u, double a);

/// S(w) = (w + 1/w)/2.
cplx joukowski(cplx w);
/// Inverse branch of S with |w| >= 1: z + sqrt(z-1) sqrt(z+1).
cplx joukowski_inverse(cplx z);

struct SaddleData {
    double u = 0.0;
    double a = 0.0;
    double theta_c = 0.0;
    cplx w_c_plus;
    cplx w_c_minus;
    cplx z_c_plus;
    cplx z_c_minus;
    double omega0 = 0.0;
    double rho_u = 0.0;
    /// max |f'(z_c+-)| at the computed points.
    double critical_residual = 0.0;
};

/// Critical points of the limit potential. Requires |u| <= sqrt(1/2 + 2a^2) and a > 0.
SaddleData saddle_data(double u, double a);

/// Sup of |f_N - f| over the fixed grid Re in [-3, 3] step 0.25, Im in {+-0.5, +-1}.
double log_potential_deviation(const Spectrum& y, double u, double a);

}  // namespace dgue
