#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dgue {

using cplx = std::complex<double>;

/// Dense N x N complex Hermitian matrix. Construction enforces entry(j,k) == conj(entry(k,j))
/// and a real diagonal; the entries are immutable afterwards.
class HermitianMatrix {
public:
    /// Validates `entries`. With tolerance 0 the conjugate symmetry must hold bit for bit;
    /// otherwise |H_jk - conj(H_kj)| <= tolerance * max|H| is accepted and the matrix is
    /// symmetrised from its upper triangle.
    static HermitianMatrix from_matrix(Eigen::MatrixXcd entries, double tolerance = 0.0);
    static HermitianMatrix zero(int n);

    int dimension() const { return static_cast<int>(entries_.rows()); }
    cplx operator()(int j, int k) const { return entries_(j, k); }
    const Eigen::MatrixXcd& matrix() const { return entries_; }

    /// Largest |H_jk - conj(H_kj)| relative to max |H_jk| (0 for exact Hermitian input).
    static double hermitian_defect(const Eigen::MatrixXcd& m);

private:
    explicit HermitianMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}

    Eigen::MatrixXcd entries_;
};

}  // namespace dgue
