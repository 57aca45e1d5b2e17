#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "dgue/error.hpp"
#include "dgue/kernel.hpp"
#include "dgue/quadrature.hpp"

namespace dgue {

BiorthogonalKernel::BiorthogonalKernel(Basis phi, Basis psi, double lo, double hi, int quadrature_nodes)
    : phi_(std::move(phi)), psi_(std::move(psi)), lo_(lo), hi_(hi), nodes_(quadrature_nodes) {
    if (phi_.empty() || phi_.size() != psi_.size())
        throw ConfigError("BiorthogonalKernel: phi and psi need the same non-zero length");
    if (!(hi > lo)) throw ConfigError("BiorthogonalKernel: empty domain");
    gram_ = weighted_gram([](double) { return 1.0; });
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram_);
    const auto& sv = svd.singularValues();
    condition_ = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    if (!(condition_ < 1e13)) throw NumericalError("BiorthogonalKernel: Gram matrix is rank deficient");
    gram_inv_ = gram_.inverse();
}

Eigen::MatrixXd BiorthogonalKernel::weighted_gram(const std::function<double(double)>& g) const {
    const QuadratureRule rule = gauss_legendre(nodes_, lo_, hi_);
    const int n = rank();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double x = rule.nodes[q];
        const double wg = rule.weights[q] * g(x);
        for (int j = 0; j < n; ++j) {
            const double pj = phi_[j](x) * wg;
            for (int k = 0; k < n; ++k) b(j, k) += pj * psi_[k](x);
        }
    }
    return b;
}

double BiorthogonalKernel::operator()(double t, double s) const {
    const int n = rank();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double pk = psi_[k](t);
        for (int j = 0; j < n; ++j) sum += pk * gram_inv_(k, j) * phi_[j](s);
    }
    return sum;
}

double BiorthogonalKernel::fredholm_det(const std::function<double(double)>& g) const {
    const int n = rank();
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + gram_inv_ * weighted_gram(g);
    return m.fullPivLu().determinant();
}

FredholmRatio fredholm_ratio_check(const BiorthogonalKernel& k, const std::function<double(double)>& g,
                                   int nodes_per_axis) {
    const int n = k.rank();
    if (n < 2 || n > 3) throw DomainError("fredholm_ratio_check: N must be 2 or 3");
    const QuadratureRule rule = gauss_legendre(nodes_per_axis, k.lo(), k.hi());
    const int q = static_cast<int>(rule.size());
    // basis values at the nodes
    Eigen::MatrixXd phi(n, q), psi(n, q);
    std::vector<double> gv(q);
    for (int i = 0; i < q; ++i) {
        for (int j = 0; j < n; ++j) {
            phi(j, i) = k.phi()[j](rule.nodes[i]);
            psi(j, i) = k.psi()[j](rule.nodes[i]);
        }
        gv[i] = g(rule.nodes[i]);
    }
    double num = 0.0, den = 0.0;
    std::vector<int> idx(n, 0);
    Eigen::MatrixXd a(n, n), b(n, n);
    for (;;) {
        double w = 1.0, factor = 1.0;
        for (int c = 0; c < n; ++c) {
            w *= rule.weights[idx[c]];
            factor *= 1.0 + gv[idx[c]];
            for (int r = 0; r < n; ++r) {
                a(r, c) = phi(r, idx[c]);
                b(r, c) = psi(r, idx[c]);
            }
        }
        const double joint = a.determinant() * b.determinant() * w;
        den += joint;
        num += joint * factor;
        int c = 0;
        while (c < n && ++idx[c] == q) idx[c++] = 0;
        if (c == n) break;
    }
    FredholmRatio out;
    out.lhs = num / den;
    out.rhs = k.fredholm_det(g);
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace dgue
