#include "dgue/paths.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "dgue/error.hpp"
#include "dgue/linalg.hpp"

namespace dgue {

using std::numbers::pi;

namespace {

constexpr std::size_t kMaxPaths = 6;

bool strictly_ascending(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool arithmetic_progression(const std::vector<double>& v) {
    if (v.size() < 2) return true;
    const double d = v[1] - v[0];
    if (d == 0.0) return false;
    for (std::size_t i = 2; i < v.size(); ++i)
        if (std::abs((v[i] - v[i - 1]) - d) > 1e-12 * std::abs(d)) return false;
    return true;
}

// det(exp(entry(j,k))) with each row scaled by its largest entry before LU.
SignedLogDet exp_matrix_log_det(std::size_t n, const std::function<double(std::size_t, std::size_t)>& entry) {
    Eigen::MatrixXd m(n, n);
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double row_max = -INFINITY;
        for (std::size_t k = 0; k < n; ++k) row_max = std::max(row_max, entry(j, k));
        for (std::size_t k = 0; k < n; ++k) m(j, k) = std::exp(entry(j, k) - row_max);
        shift += row_max;
    }
    SignedLogDet d = log_determinant(m);
    d.log_abs += shift;
    return d;
}

// det(p_t(rows_j, cols_k)).
SignedLogDet heat_det(const std::vector<double>& rows, const std::vector<double>& cols, double t) {
    const std::size_t n = rows.size();
    SignedLogDet d;
    const double prefactor = -0.5 * n * std::log(2.0 * pi * t);
    const bool cols_ap = arithmetic_progression(cols);
    if (cols_ap || arithmetic_progression(rows)) {
        // exp(r c / t) with c_k = c0 + k delta is a Vandermonde matrix in xi_j = exp(r_j delta / t)
        const std::vector<double>& r = cols_ap ? rows : cols;
        const std::vector<double>& c = cols_ap ? cols : rows;
        const double delta = n > 1 ? c[1] - c[0] : 0.0;
        double log_abs = prefactor;
        double sign = 1.0;
        for (std::size_t j = 0; j < n; ++j) log_abs += -0.5 * (r[j] * r[j] + c[j] * c[j]) / t + r[j] * c[0] / t;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double e = std::expm1((r[j] - r[i]) * delta / t);
                if (e == 0.0) return SignedLogDet{0.0, -INFINITY};
                sign *= e > 0.0 ? 1.0 : -1.0;
                log_abs += r[i] * delta / t + std::log(std::abs(e));
            }
        d.sign = sign;
        d.log_abs = log_abs;
        return d;
    }
    d = exp_matrix_log_det(n, [&](std::size_t j, std::size_t k) {
        const double diff = rows[j] - cols[k];
        return -diff * diff / (2.0 * t);
    });
    d.log_abs += prefactor;
    return d;
}

double vandermonde_log_abs(const std::vector<double>& v, double& sign) {
    double log_abs = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const double d = v[j] - v[i];
            if (d < 0.0) sign = -sign;
            log_abs += std::log(std::abs(d));
        }
    return log_abs;
}

}  // namespace

double heat_kernel(double t, double x, double y) {
    if (!(t > 0.0)) throw DomainError("heat_kernel: t must be positive");
    const double d = x - y;
    return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * pi * t);
}

std::vector<double> PathConfig::end_points() const {
    if (!z.empty()) return z;
    std::vector<double> out(y.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<double>(j);
    return out;
}

void PathConfig::validate() const {
    if (y.empty() || y.size() > kMaxPaths) throw ConfigError("PathConfig: need 1..6 paths");
    if (!strictly_ascending(y)) throw DomainError("PathConfig: y must be strictly ascending");
    if (!z.empty() && z.size() != y.size()) throw ConfigError("PathConfig: z must match y in length");
    if (!(S > 0.0) || !(T > 0.0)) throw ConfigError("PathConfig: S and T must be positive");
}

double km_conditional_density(const std::vector<double>& x, const PathConfig& cfg) {
    cfg.validate();
    if (x.size() != cfg.y.size()) throw ConfigError("km_conditional_density: x has the wrong length");
    const std::vector<double> z = cfg.end_points();
    const SignedLogDet norm = heat_det(cfg.y, z, cfg.S + cfg.T);
    if (!(norm.sign > 0.0)) throw NumericalError("km_conditional_density: normalisation determinant is not positive");
    const SignedLogDet first = heat_det(cfg.y, x, cfg.S);
    const SignedLogDet second = heat_det(x, z, cfg.T);
    const double sign = first.sign * second.sign;
    if (sign == 0.0) return 0.0;
    return sign * std::exp(first.log_abs + second.log_abs - norm.log_abs);
}

double km_limit_density_qS(const std::vector<double>& x, const std::vector<double>& y, double S) {
    if (!(S > 0.0)) throw DomainError("km_limit_density_qS: S must be positive");
    if (x.size() != y.size() || y.empty()) throw ConfigError("km_limit_density_qS: x and y must have equal length");
    if (!strictly_ascending(y)) throw DomainError("km_limit_density_qS: y must be strictly ascending (no repeats)");
    const std::size_t n = y.size();
    const SignedLogDet g = exp_matrix_log_det(n, [&](std::size_t j, std::size_t k) {
        const double d = x[j] - y[k];
        return -d * d / (2.0 * S);
    });
    if (g.sign == 0.0) return 0.0;
    double sign = g.sign;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[i] == x[j]) return 0.0;
    const double log_dx = vandermonde_log_abs(x, sign);
    double unused = 1.0;
    const double log_dy = vandermonde_log_abs(y, unused);
    const double log_abs = -0.5 * n * std::log(2.0 * pi * S) + log_dx - log_dy + g.log_abs;
    const double value = sign * std::exp(log_abs);
    if (value < 0.0) {
        // ascending x and y give a totally positive kernel matrix; tiny negatives are LU roundoff
        if (std::exp(log_abs + 0.5 * n * std::log(2.0 * pi * S)) < 1e-12) return 0.0;
        throw NumericalError("km_limit_density_qS: negative density");
    }
    return value;
}

double eigen_density_rhoN(const std::vector<double>& x, const Spectrum& y, double a) {
    if (!(a > 0.0)) throw DomainError("eigen_density_rhoN: a must be positive");
    return km_limit_density_qS(x, y.vector(), a * a / static_cast<double>(y.size()));
}

namespace {

double min_gap(const std::vector<double>& v) {
    double g = INFINITY;
    for (std::size_t i = 1; i < v.size(); ++i) g = std::min(g, v[i] - v[i - 1]);
    return g;
}

struct DysonStepper {
    Stream& rng;
    int max_retries;
    std::uint64_t steps = 0;
    std::uint64_t rejections = 0;
    double min_gap_seen = INFINITY;
    std::vector<double> trial;

    // Advances lam by dt with Brownian increments db; splits on ordering failure.
    void step(std::vector<double>& lam, double dt, const std::vector<double>& db, int depth) {
        const std::size_t n = lam.size();
        trial.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double drift = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != i) drift += 1.0 / (lam[i] - lam[k]);
            trial[i] = lam[i] + db[i] + drift * dt;
        }
        if (std::is_sorted(trial.begin(), trial.end()) && min_gap(trial) > 0.0) {
            lam.swap(trial);
            ++steps;
            if (n > 1) min_gap_seen = std::min(min_gap_seen, min_gap(lam));
            return;
        }
        ++rejections;
        if (depth >= max_retries) throw NumericalError("dyson_evolve: ordering lost after maximum step halvings");
        // Brownian bridge: first half of the increment given the whole
        std::vector<double> first(n), second(n);
        const double sd = std::sqrt(dt / 4.0);
        for (std::size_t i = 0; i < n; ++i) {
            first[i] = 0.5 * db[i] + sd * rng.normal();
            second[i] = db[i] - first[i];
        }
        step(lam, dt / 2.0, first, depth + 1);
        step(lam, dt / 2.0, second, depth + 1);
    }
};

}  // namespace

DysonResult dyson_evolve(const std::vector<double>& y, double t_final, RngSeed seed, DysonSettings settings) {
    if (y.empty()) throw ConfigError("dyson_evolve: empty start");
    if (!strictly_ascending(y)) throw DomainError("dyson_evolve: start must be strictly ascending");
    if (!(t_final >= 0.0)) throw ConfigError("dyson_evolve: t_final must be >= 0");
    const std::size_t n = y.size();
    const double gap0 = n > 1 ? min_gap(y) : 1.0;
    // a single path has no gap to protect
    const double bound = n > 1 ? settings.gap_factor * gap0 * gap0 : std::max(t_final, 1e-4);
    double dt = settings.dt > 0.0 ? settings.dt : bound;
    if (dt > bound * (1.0 + 1e-12)) throw ConfigError("dyson_evolve: dt exceeds 1e-4 * (min gap)^2");

    Stream rng(seed);
    DysonStepper stepper{rng, settings.max_retries, 0, 0, INFINITY, {}};
    std::vector<double> lam = y;
    std::vector<double> db(n);
    double t = 0.0;
    while (t < t_final) {
        double h = std::min(dt, t_final - t);
        if (n > 1) {
            const double g = min_gap(lam);
            h = std::min(h, settings.gap_factor * g * g);
        }
        const double sd = std::sqrt(h);
        for (auto& b : db) b = sd * rng.normal();
        stepper.step(lam, h, db, 0);
        t += h;
        if (t_final - t < 1e-15 * t_final) break;
    }
    DysonResult out;
    out.values = std::move(lam);
    out.min_gap = n > 1 ? std::min(stepper.min_gap_seen, gap0) : 0.0;
    out.steps = stepper.steps;
    out.rejections = stepper.rejections;
    return out;
}

}  // namespace dgue
