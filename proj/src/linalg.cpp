#include "dgue/linalg.hpp"

#include <cmath>
#include <limits>

namespace dgue {

double SignedLogDet::value() const {
    if (sign == 0.0) return 0.0;
    return sign * std::exp(log_abs);
}

SignedLogDet log_determinant(Eigen::MatrixXd m) {
    SignedLogDet out;
    if (m.rows() == 0) return out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double scale = m.row(i).cwiseAbs().maxCoeff();
        if (scale == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
        m.row(i) /= scale;
        out.log_abs += std::log(scale);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    const auto& packed = lu.matrixLU();
    double sign = lu.permutationP().determinant() * lu.permutationQ().determinant();
    for (Eigen::Index i = 0; i < packed.rows(); ++i) {
        const double d = packed(i, i);
        if (d == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
        if (d < 0) sign = -sign;
        out.log_abs += std::log(std::abs(d));
    }
    out.sign = sign;
    return out;
}

double determinant(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 1.0;
    return m.fullPivLu().determinant();
}

}  // namespace dgue
