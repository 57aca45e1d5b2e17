#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgue/hermitian.hpp"
#include "dgue/spectral.hpp"
#include "dgue/spectrum.hpp"

namespace dgue {

enum class ContourKind { HorizontalPair, VerticalLine };

/// Discretised contour: integral of f over the path ~ sum weights[i] * f(nodes[i]).
/// Weights carry dz including orientation.
struct ContourQuadrature {
    enum Segment : int { Upper = 0, Lower = 1, RightSide = 2, LeftSide = 3, Line = 4 };

    ContourKind kind = ContourKind::HorizontalPair;
    /// |Im z| of the horizontal lines, or Re w of the vertical line.
    double offset = 0.0;
    /// Horizontal lines span Re z in [centre - R, centre + R]; the vertical line Im w in [-R, R].
    double centre = 0.0;
    double radius = 0.0;
    int panels = 0;
    std::vector<cplx> nodes;
    std::vector<cplx> weights;
    std::vector<int> segment;

    std::size_t size() const { return nodes.size(); }
};

struct QuadratureSettings {
    int nodes_per_panel = 24;
    int initial_panels = 8;
    /// Panel doubling stops once two levels agree to this (relative to max(|K|, 1)).
    double rel_tol = 1e-8;
    /// At the node cap, a last change above this raises AccuracyError.
    double fail_tol = 1e-5;
    int max_nodes = 1 << 14;
    /// Endpoint integrand magnitude relative to the peak.
    double tail_ratio = 1e-18;
    /// Truncation is sized for |tau| up to this value.
    double tau_max = 8.0;
    std::optional<double> gamma_offset;
    std::optional<double> Gamma_real_part;
};

/// Everything needed to evaluate the rescaled deformed-GUE kernel around u.
struct KernelContext {
    double u = 0.0;
    double a = 1.0;
    int n = 0;
    Spectrum y;
    SaddleData saddle;
    QuadratureSettings settings;

    /// Validates a > 0, non-empty spectrum and the |u| bound of saddle_data.
    static KernelContext make(double u, double a, Spectrum y, QuadratureSettings settings = {});

    double rho() const { return saddle.rho_u; }
    /// a^2 rho(u), the natural length scale of h.
    double scale() const { return a * a * saddle.rho_u; }
    double omega0() const { return saddle.omega0; }
    /// max(|Im z_c|, 0.05) unless overridden.
    double gamma_offset() const;
    double Gamma_real_part() const;
};

/// Closed loop around the spectrum made of Im z = +-offset, traversed counter-clockwise and
/// closed by short vertical sides.
ContourQuadrature build_gamma(const KernelContext& ctx, int panels = 0);
/// Upward vertical line Re w = Re z_c.
ContourQuadrature build_Gamma(const KernelContext& ctx, int panels = 0);

/// g_N from its explicit sum:
/// (1/(a^2 z)) (w + z - centre - (a^2/N) sum y_j / ((w - y_j)(z - y_j))).
cplx g_N_sum(cplx z, cplx w, double centre, double a, const Spectrum& y);
/// Same function through derivatives of the log-potential centred at `centre`:
/// f'(w)/z + (f'(z) - f'(w))/(z - w), with f'(w)/z + f''(z) on the diagonal.
cplx g_N_closed(cplx z, cplx w, double centre, double a, const Spectrum& y);

/// -expm1(tau z / c) / tau, and -z/c at tau = 0.
cplx h_factor(cplx z, double tau, double c);

struct HG {
    cplx h;
    cplx g;
};

/// h(z,w) = (e^{omega0 tau}/tau)(e^{-tau w/c} - e^{-tau(w-z)/c}) with c = a^2 rho(u),
/// and g_N centred at v = u + tau/(N rho(u)).
HG eval_h_gN(cplx z, cplx w, double tau, const KernelContext& ctx);

struct KernelEvaluation {
    double value = 0.0;
    double imag_part = 0.0;
    int panels = 0;
    std::size_t gamma_nodes = 0;
    std::size_t Gamma_nodes = 0;
    double last_change = 0.0;
    bool converged = false;
};

/// Evaluates (1/N rho) K_N(u, u + tau/(N rho)) with cached contours. Not thread-safe;
/// use one evaluator per thread.
class DeformedKernelEvaluator {
public:
    explicit DeformedKernelEvaluator(KernelContext ctx);

    const KernelContext& context() const { return ctx_; }

    /// Double contour integral at a fixed panel count, complex result.
    cplx integral(double tau, int panels);
    /// Panel doubling until self-agreement.
    KernelEvaluation evaluate(double tau);

private:
    struct Level {
        ContourQuadrature gamma;
        ContourQuadrature Gamma;
        std::vector<cplx> log_z;    // -N f_N(z)
        std::vector<cplx> log_w;    // N f_N(w)
        std::vector<cplx> fprime_w; // f_N'(w), centred at u
        double max_z = 0.0;
        double max_w = 0.0;
    };
    const Level& level(int panels);

    KernelContext ctx_;
    std::vector<std::pair<int, Level>> levels_;
};

/// Real part of DeformedKernelEvaluator::evaluate for one tau.
double deformed_kernel(double tau, const KernelContext& ctx);

/// sin(pi tau)/(pi tau).
double sine_kernel(double tau);

/// GUE kernel for weight e^{-N x^2/2}: sum_{k<N} p_k(x) p_k(y) e^{-N(x^2+y^2)/4}.
double gue_kernel(double x, double y, int n);

/// det(K(x_i, x_j)) for m <= 12 points.
double correlation_det(std::span<const double> points, const std::function<double(double, double)>& kernel);

/// Finite-rank kernel K(t,s) = sum_{j,k} psi_k(t) (A^{-1})_{kj} phi_j(s), A_jk = int phi_j psi_k.
class BiorthogonalKernel {
public:
    using Basis = std::vector<std::function<double(double)>>;

    BiorthogonalKernel(Basis phi, Basis psi, double lo, double hi, int quadrature_nodes = 64);

    double operator()(double t, double s) const;
    int rank() const { return static_cast<int>(phi_.size()); }
    const Eigen::MatrixXd& gram() const { return gram_; }
    double condition_number() const { return condition_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    int quadrature_nodes() const { return nodes_; }

    /// B_jk = int phi_j psi_k g.
    Eigen::MatrixXd weighted_gram(const std::function<double(double)>& g) const;
    /// det(I + A^{-1} B) for the weight g.
    double fredholm_det(const std::function<double(double)>& g) const;

    const Basis& phi() const { return phi_; }
    const Basis& psi() const { return psi_; }

private:
    Basis phi_, psi_;
    double lo_, hi_;
    int nodes_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd gram_inv_;
    double condition_ = 0.0;
};

struct FredholmRatio {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

/// Z_N[1+g]/Z_N[1] by tensor-product quadrature over [lo,hi]^N of det(phi_j(x_k)) det(psi_j(x_k))
/// against det(I + A^{-1}B). N in {2, 3}.
FredholmRatio fredholm_ratio_check(const BiorthogonalKernel& k, const std::function<double(double)>& g,
                                   int nodes_per_axis = 24);

}  // namespace dgue
