#ifndef PHASEKIT_OPTIMIZER_H
#define PHASEKIT_OPTIMIZER_H

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/cost.h"
#include "phasekit/spectrum.h"

namespace phasekit {

/// Windows up to this size use a dense Hermitian eigensolver; larger real
/// tridiagonal matrices switch to Sturm bisection plus inverse iteration.
inline constexpr Eigen::Index kDenseSolverLimit = 512;

struct MinEigenpair {
    double value = 0.0;
    Eigen::VectorXcd vector;
    /// Number of eigenvalues within the degeneracy tolerance of `value`.
    int multiplicity = 1;
    /// Orthonormal basis of the minimal eigenspace, one column per vector.
    Eigen::MatrixXcd eigenspace;
};

MinEigenpair min_eigenpair(const HermitianMatrix &matrix);

struct TridiagonalEigenpair {
    double value = 0.0;
    Eigen::VectorXd vector;
    int multiplicity = 1;
};

/// Smallest eigenpair of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (length n-1).
TridiagonalEigenpair tridiagonal_min_eigenpair(std::span<const double> diagonal, std::span<const double> off_diagonal);

/// Minimal eigenpair of C - mu' diag(E), rephased so its largest component
/// is real and positive.
struct EigenSolution {
    double eigenvalue = 0.0;
    Eigen::VectorXcd vector;
    /// |vector_n|.
    std::vector<double> weights;
    /// ||A v - lambda v||.
    double residual = 0.0;
    int multiplicity = 1;
    Eigen::MatrixXcd eigenspace;
    /// True when the rephased eigenvector is real with one sign throughout.
    bool constant_sign = false;

    ReducedState as_state(const Spectrum &spectrum) const;
};

EigenSolution optimal_state_numeric(
    const HermitianMatrix &cost_matrix,
    std::optional<std::vector<double>> energy_diag = std::nullopt,
    std::optional<double> mu_prime = std::nullopt);

/// Signed amplitudes sin((n+1) theta), n = 0 .. n_max, normalized on the
/// window. The untruncated state is only Dirac-normalizable.
std::vector<double> chebyshev_amplitudes(double theta, int n_max);

/// chebyshev_amplitudes split into weights and +/-1 phases on naturals:0:n_max.
ReducedState chebyshev_state(double theta, int n_max);

/// max_n |w_n + w_{n+2} - 2 lambda w_{n+1}| over interior n.
double recursion_residual_w(std::span<const double> weights, double lambda);

struct CosineSineUncertainty {
    double delta_cos = 0.0;
    double delta_sin = 0.0;
    double product = 0.0;
    /// (1/4) |<0|psi>|^2.
    double bound = 0.0;
};

/// Spreads of (e+ + e-)/2 and (e+ - e-)/2i for a state supported on
/// n = 0 .. size-1 of a one-sided spectrum. The shift operators act on a
/// padded window so nothing is lost to truncation.
CosineSineUncertainty cosine_sine_uncertainty(std::span<const Complex> amplitudes);

}  // namespace phasekit

#endif
