#include "dgue/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

#include "dgue/error.hpp"
#include "dgue/quadrature.hpp"

namespace dgue {

using std::numbers::pi;

namespace {

constexpr double kMinLineOffset = 0.05;
constexpr double kSpectrumMargin = 0.5;
constexpr int kTailSamples = 512;

// Re(f_N(z)) centred at u, without the 1/N in front of the logs (i.e. N f_N).
double n_re_potential(cplx z, double u, double a, const Spectrum& y) {
    double s = static_cast<double>(y.size()) * (z * z - 2.0 * u * z).real() / (2.0 * a * a);
    for (double yj : y.values()) s += std::log(std::abs(z - yj));
    return s;
}

cplx n_potential(cplx z, double u, double a, const Spectrum& y) {
    cplx s = static_cast<double>(y.size()) * (z * z - 2.0 * u * z) / (2.0 * a * a);
    for (double yj : y.values()) s += std::log(z - yj);
    return s;
}

// Grows r until log_mag(centre +- r) is below the sampled peak by log(1/ratio).
template <class F>
double truncate_tail(F&& log_mag, double r, double ratio) {
    const double drop = -std::log(ratio);
    for (int iter = 0; iter < 60; ++iter) {
        double peak = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= kTailSamples; ++i) peak = std::max(peak, log_mag(-r + 2.0 * r * i / kTailSamples));
        if (log_mag(r) < peak - drop && log_mag(-r) < peak - drop) return r;
        r *= 1.2;
    }
    throw NumericalError("contour truncation: integrand does not decay");
}

void append_segment(ContourQuadrature& c, cplx from, cplx to, int panels, int npp, int tag) {
    const QuadratureRule rule = composite_gauss_legendre(0.0, 1.0, panels, npp);
    const cplx d = to - from;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        c.nodes.push_back(from + rule.nodes[i] * d);
        c.weights.push_back(rule.weights[i] * d);
        c.segment.push_back(tag);
    }
}

double spectrum_reach(const Spectrum& y, double centre) {
    double r = 0.0;
    for (double v : y.values()) r = std::max(r, std::abs(v - centre));
    return r;
}

}  // namespace

KernelContext KernelContext::make(double u, double a, Spectrum y, QuadratureSettings settings) {
    if (!(a > 0.0)) throw DomainError("kernel: a must be positive");
    if (y.size() == 0) throw DomainError("kernel: empty spectrum");
    if (settings.nodes_per_panel < 2 || settings.initial_panels < 1)
        throw ConfigError("kernel: invalid quadrature settings");
    KernelContext ctx;
    ctx.u = u;
    ctx.a = a;
    ctx.n = static_cast<int>(y.size());
    ctx.y = std::move(y);
    ctx.saddle = saddle_data(u, a);
    ctx.settings = settings;
    return ctx;
}

double KernelContext::gamma_offset() const {
    if (settings.gamma_offset) return *settings.gamma_offset;
    return std::max(std::abs(saddle.z_c_plus.imag()), kMinLineOffset);
}

double KernelContext::Gamma_real_part() const {
    return settings.Gamma_real_part ? *settings.Gamma_real_part : saddle.z_c_plus.real();
}

ContourQuadrature build_gamma(const KernelContext& ctx, int panels) {
    if (panels <= 0) panels = ctx.settings.initial_panels;
    const double eta = ctx.gamma_offset();
    const double xc = ctx.saddle.z_c_plus.real();
    const double c = ctx.scale();
    const double tau_max = ctx.settings.tau_max;
    auto log_mag = [&](double x) {
        const double grow = tau_max * std::abs(xc + x) / c;
        return -n_re_potential(cplx(xc + x, eta), ctx.u, ctx.a, ctx.y) + std::log1p(std::exp(-grow)) + grow;
    };
    const double r0 = spectrum_reach(ctx.y, xc) + kSpectrumMargin;
    const double r = truncate_tail(log_mag, r0, ctx.settings.tail_ratio);

    ContourQuadrature g;
    g.kind = ContourKind::HorizontalPair;
    g.offset = eta;
    g.centre = xc;
    g.radius = r;
    g.panels = panels;
    const int npp = ctx.settings.nodes_per_panel;
    const int side_panels = std::max(1, panels / 4);
    append_segment(g, cplx(xc + r, eta), cplx(xc - r, eta), panels, npp, ContourQuadrature::Upper);
    append_segment(g, cplx(xc - r, eta), cplx(xc - r, -eta), side_panels, npp, ContourQuadrature::LeftSide);
    append_segment(g, cplx(xc - r, -eta), cplx(xc + r, -eta), panels, npp, ContourQuadrature::Lower);
    append_segment(g, cplx(xc + r, -eta), cplx(xc + r, eta), side_panels, npp, ContourQuadrature::RightSide);
    // nodes on the horizontal lines sit exactly at +-eta
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.segment[i] == ContourQuadrature::Upper) g.nodes[i].imag(eta);
        if (g.segment[i] == ContourQuadrature::Lower) g.nodes[i].imag(-eta);
    }
    return g;
}

ContourQuadrature build_Gamma(const KernelContext& ctx, int panels) {
    if (panels <= 0) panels = ctx.settings.initial_panels;
    const double xw = ctx.Gamma_real_part();
    auto log_mag = [&](double t) { return n_re_potential(cplx(xw, t), ctx.u, ctx.a, ctx.y); };
    const double r0 = 1.0 + ctx.a * std::sqrt(2.0 * -std::log(ctx.settings.tail_ratio) / ctx.n);
    const double r = truncate_tail(log_mag, r0, ctx.settings.tail_ratio);

    ContourQuadrature g;
    g.kind = ContourKind::VerticalLine;
    g.offset = xw;
    g.centre = 0.0;
    g.radius = r;
    g.panels = panels;
    append_segment(g, cplx(xw, -r), cplx(xw, r), panels, ctx.settings.nodes_per_panel, ContourQuadrature::Line);
    for (auto& z : g.nodes) z.real(xw);
    return g;
}

cplx g_N_sum(cplx z, cplx w, double centre, double a, const Spectrum& y) {
    const double a2 = a * a;
    cplx s = 0.0;
    for (double yj : y.values()) s += yj / ((w - yj) * (z - yj));
    return (w + z - centre - a2 / static_cast<double>(y.size()) * s) / (a2 * z);
}

cplx g_N_closed(cplx z, cplx w, double centre, double a, const Spectrum& y) {
    const PotentialValue fz = log_potential_fN(z, centre, a, y);
    const PotentialValue fw = log_potential_fN(w, centre, a, y);
    if (std::abs(z - w) < 1e-4 * std::max(1.0, std::abs(z))) {
        // Taylor expansion of the difference quotient about the midpoint
        const cplx m = 0.5 * (z + w);
        const PotentialValue fm = log_potential_fN(m, centre, a, y);
        double inv_n = 1.0 / static_cast<double>(y.size());
        cplx f4 = 0.0;  // f'''' at m
        for (double yj : y.values()) f4 -= 6.0 / std::pow(m - yj, 4);
        f4 *= inv_n;
        const cplx d = z - w;
        return fw.d1 / z + fm.d2 + f4 * d * d / 24.0;
    }
    return fw.d1 / z + (fz.d1 - fw.d1) / (z - w);
}

cplx h_factor(cplx z, double tau, double c) {
    const cplx x = tau * z / c;
    if (std::abs(x) < 1e-4) return -(z / c) * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
    // expm1 for complex argument without cancellation in the real part
    const double er = std::expm1(x.real());
    const double s = std::sin(0.5 * x.imag());
    const cplx em1(er * std::cos(x.imag()) - 2.0 * s * s, std::exp(x.real()) * std::sin(x.imag()));
    return -em1 / tau;
}

HG eval_h_gN(cplx z, cplx w, double tau, const KernelContext& ctx) {
    const double c = ctx.scale();
    const double v = ctx.u + tau / (ctx.n * ctx.rho());
    const cplx h = std::exp(ctx.omega0() * tau - tau * w / c) * h_factor(z, tau, c);
    return HG{h, g_N_closed(z, w, v, ctx.a, ctx.y)};
}

DeformedKernelEvaluator::DeformedKernelEvaluator(KernelContext ctx) : ctx_(std::move(ctx)) {}

const DeformedKernelEvaluator::Level& DeformedKernelEvaluator::level(int panels) {
    for (const auto& [p, lvl] : levels_)
        if (p == panels) return lvl;
    Level lvl;
    lvl.gamma = build_gamma(ctx_, panels);
    lvl.Gamma = build_Gamma(ctx_, panels);
    lvl.log_z.reserve(lvl.gamma.size());
    lvl.max_z = -std::numeric_limits<double>::infinity();
    for (cplx z : lvl.gamma.nodes) {
        lvl.log_z.push_back(-n_potential(z, ctx_.u, ctx_.a, ctx_.y));
        lvl.max_z = std::max(lvl.max_z, lvl.log_z.back().real());
    }
    lvl.max_w = -std::numeric_limits<double>::infinity();
    for (cplx w : lvl.Gamma.nodes) {
        lvl.log_w.push_back(n_potential(w, ctx_.u, ctx_.a, ctx_.y));
        lvl.max_w = std::max(lvl.max_w, lvl.log_w.back().real());
        lvl.fprime_w.push_back(log_potential_fN(w, ctx_.u, ctx_.a, ctx_.y).d1);
    }
    levels_.emplace_back(panels, std::move(lvl));
    return levels_.back().second;
}

cplx DeformedKernelEvaluator::integral(double tau, int panels) {
    const Level& lv = level(panels);
    const double c = ctx_.scale();
    const double a2 = ctx_.a * ctx_.a;
    const double shift = tau / (ctx_.n * ctx_.rho() * a2);  // f'_v = f'_u - shift
    const auto& y = ctx_.y.values();
    const std::size_t n = y.size();

    // The integrand h g e^{N(f(w)-f(z))} separates into sums over z and over w:
    //   g = f'_v(w)/z + 1/a^2 - (1/N) sum_j 1/((z-y_j)(w-y_j)).
    cplx za = 0.0, za_over_z = 0.0;
    std::vector<cplx> za_pole(n, 0.0);
    for (std::size_t i = 0; i < lv.gamma.size(); ++i) {
        const cplx z = lv.gamma.nodes[i];
        const cplx wa = lv.gamma.weights[i] * std::exp(lv.log_z[i] - lv.max_z) * h_factor(z, tau, c);
        za += wa;
        za_over_z += wa / z;
        for (std::size_t j = 0; j < n; ++j) za_pole[j] += wa / (z - y[j]);
    }
    cplx wb = 0.0, wb_fprime = 0.0;
    std::vector<cplx> wb_pole(n, 0.0);
    for (std::size_t k = 0; k < lv.Gamma.size(); ++k) {
        const cplx w = lv.Gamma.nodes[k];
        const cplx b = lv.Gamma.weights[k] * std::exp(lv.log_w[k] - lv.max_w - tau * w / c);
        wb += b;
        wb_fprime += b * (lv.fprime_w[k] - shift);
        for (std::size_t j = 0; j < n; ++j) wb_pole[j] += b / (w - y[j]);
    }
    cplx cross = 0.0;
    for (std::size_t j = 0; j < n; ++j) cross += za_pole[j] * wb_pole[j];
    const cplx bracket = za_over_z * wb_fprime + za * wb / a2 - cross / static_cast<double>(n);
    const cplx two_pi_i(0.0, 2.0 * pi);
    return static_cast<double>(ctx_.n) * std::exp(ctx_.omega0() * tau + lv.max_z + lv.max_w) * bracket /
           (two_pi_i * two_pi_i);
}

KernelEvaluation DeformedKernelEvaluator::evaluate(double tau) {
    const auto& s = ctx_.settings;
    KernelEvaluation out;
    int panels = s.initial_panels;
    cplx prev = integral(tau, panels);
    std::vector<double> history{prev.real()};
    for (;;) {
        const int next = panels * 2;
        // horizontal lines dominate the node count of gamma
        const std::size_t gamma_nodes = static_cast<std::size_t>(2 * next + 2 * std::max(1, next / 4)) * s.nodes_per_panel;
        if (gamma_nodes > static_cast<std::size_t>(s.max_nodes)) break;
        const cplx cur = integral(tau, next);
        out.last_change = std::abs(cur - prev) / std::max(std::abs(cur), 1.0);
        history.push_back(cur.real());
        prev = cur;
        panels = next;
        if (out.last_change < s.rel_tol) {
            out.converged = true;
            break;
        }
    }
    out.value = prev.real();
    out.imag_part = prev.imag();
    out.panels = panels;
    out.gamma_nodes = level(panels).gamma.size();
    out.Gamma_nodes = level(panels).Gamma.size();
    const bool imag_ok = std::abs(prev.imag()) < 1e-6 * std::max(std::abs(prev), 1.0);
    if ((!out.converged && out.last_change > s.fail_tol) || !imag_ok || history.size() < 2) {
        nlohmann::json d;
        d["tau"] = tau;
        d["u"] = ctx_.u;
        d["a"] = ctx_.a;
        d["N"] = ctx_.n;
        d["panels"] = panels;
        d["gamma_nodes"] = out.gamma_nodes;
        d["Gamma_nodes"] = out.Gamma_nodes;
        d["gamma_offset"] = ctx_.gamma_offset();
        d["gamma_radius"] = level(panels).gamma.radius;
        d["Gamma_real_part"] = ctx_.Gamma_real_part();
        d["Gamma_radius"] = level(panels).Gamma.radius;
        d["last_change"] = out.last_change;
        d["imag_part"] = out.imag_part;
        d["history"] = history;
        throw AccuracyError(imag_ok ? "deformed_kernel: quadrature did not converge"
                                    : "deformed_kernel: imaginary residual above 1e-6",
                            d.dump());
    }
    return out;
}

double deformed_kernel(double tau, const KernelContext& ctx) {
    DeformedKernelEvaluator ev(ctx);
    return ev.evaluate(tau).value;
}

double sine_kernel(double tau) {
    const double x = pi * tau;
    if (std::abs(tau) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

}  // namespace dgue
