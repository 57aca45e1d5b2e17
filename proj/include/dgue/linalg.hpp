#pragma once

#include <Eigen/Dense>

namespace dgue {

/// Determinant kept as sign * exp(log_abs) so that products of many O(e^N) entries survive.
struct SignedLogDet {
    double sign = 1.0;     // -1, 0 or +1
    double log_abs = 0.0;  // log|det|, -inf when sign == 0

    double value() const;
};

/// Determinant by full-pivot LU after scaling every row by its largest entry.
/// The row scales are folded back into log_abs.
SignedLogDet log_determinant(Eigen::MatrixXd m);

/// Plain determinant via full-pivot LU.
double determinant(const Eigen::MatrixXd& m);

}  // namespace dgue
