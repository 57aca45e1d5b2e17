#pragma once

// Finite-N experiments shared by the command-line tool and the acceptance suite.

#include <string>
#include <vector>

#include "dgue/ensembles.hpp"
#include "dgue/paths.hpp"
#include "dgue/stats.hpp"

namespace dgue {

/// Spectrum of H = W / sqrt(N) for one Wigner draw.
Spectrum wigner_spectrum(const WignerSpec& spec, int n, RngSeed seed);

struct SemicircleResult {
    std::vector<double> centers;
    std::vector<double> histogram;
    /// Bin averages of the semicircle density.
    std::vector<double> expected;
    double sup_error = 0.0;
    std::size_t eigenvalues = 0;
};

/// Pooled eigenvalue histogram of M = (W + aV)/sqrt N over [-r, r], r = sqrt(1+4a^2).
SemicircleResult semicircle_experiment(const WignerSpec& spec, double a, int n, int trials, int bins, RngSeed seed,
                                       unsigned threads = 0);

struct KernelScanResult {
    std::vector<double> tau;
    /// Mean over spectra of the rescaled kernel at each tau.
    std::vector<double> kernel_mean;
    std::vector<double> sine;
    /// Per-spectrum sup over tau of |kernel - sine|.
    std::vector<double> sup_errors;
    double mean_sup_error = 0.0;
};

/// Kernel of M around u for `spectra` independent Wigner spectra of size n.
KernelScanResult kernel_scan(const WignerSpec& spec, double a, double u, int n, int spectra,
                             const std::vector<double>& taus, RngSeed seed, unsigned threads = 0);

struct MarginalKs {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t samples = 0;
};

/// Eigenvalues of diag(y) + (a/sqrt 2) V, V from the GUE, against eigen_density_rhoN. N = 2.
MarginalKs eigen_density_check(const std::vector<double>& y, double a, int samples, RngSeed seed);

struct DysonCheck {
    MarginalKs ks;
    std::vector<std::vector<double>> terminal;
    std::uint64_t rejections = 0;
};

/// Dyson motion from y for time a^2/N, terminal law against eigen_density_rhoN. N = 2 for the KS part.
DysonCheck dyson_check(const std::vector<double>& y, double a, int paths, RngSeed seed, unsigned threads = 0);

struct KmCheckRow {
    double T = 0.0;
    double sup_gap = 0.0;
};

/// sup over the ordered points of a grid x grid lattice on [-3,3]^2 of |q_{S,T} - q_S|. N = 2.
std::vector<KmCheckRow> km_check(const std::vector<double>& y, double S, const std::vector<double>& t_grid,
                                 const std::vector<double>& z = {}, int grid = 20);

struct PartitionRatioRow {
    int n = 0;
    std::string g;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
};

/// Brute-force Z[1+g]/Z[1] against det(I + A^{-1}B) for fixed bases at N = 2, 3 and three weights g.
std::vector<PartitionRatioRow> partition_ratio_check();

}  // namespace dgue
