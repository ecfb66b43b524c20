#ifndef PHASEKIT_POM_H
#define PHASEKIT_POM_H

#include <Eigen/Dense>
#include <vector>

#include "phasekit/cost.h"
#include "phasekit/spectrum.h"

namespace phasekit {

/// |e(phi)> = sum_n e^{i n phi} |n> over the spectrum window.
struct SGVector {
    Spectrum spectrum;
    double phase = 0.0;
    Eigen::VectorXcd amplitudes;
};

SGVector e_vector(const Spectrum &spectrum, double phi);

/// Density of the optimal covariant POM: (1/2pi) |sum_n w_n e^{-i n Delta}|^2
/// with Delta = phi_est - phi_true.
double conditional_density(const ReducedState &state, double phi_est, double phi_true);

/// Density of the covariant POM generated by xi:
/// (1/2pi) sum_{n,m} w_n w_m xi_nm e^{-i (n - m) Delta}.
double conditional_density(const ReducedState &state, const XiMatrix &xi, double phi_est, double phi_true);

/// a_l = sum_n w_n w_{n+l}, l = 0 .. window size - 1. The optimal density is
/// (1/2pi) (a_0 + 2 sum_{l>=1} a_l cos(l Delta)).
std::vector<double> weight_autocorrelation(const ReducedState &state);

/// Rank-one projectors |e(phi_s)><e(phi_s)| / q at phi_s = 2 pi s / q.
struct DiscretePom {
    int q = 0;
    std::vector<double> phases;
    /// Unit vectors e(phi_s) / sqrt(q).
    std::vector<Eigen::VectorXcd> vectors;

    Eigen::MatrixXcd projector(std::size_t s) const;
    /// max |(sum_s P_s - I)_{ij}|.
    double completeness_residual() const;
};

DiscretePom discrete_pom_zq(int q);

/// Average cost of the q-outcome POM with the true phase averaged over a
/// uniform prior. Matches the continuous POM cost; the prior integral uses
/// an exact trapezoid rule.
double discrete_pom_average_cost(const CostModel &model, const ReducedState &state);

/// Max-norm deviation of the trapezoid quadrature of
/// int dphi/2pi |e(phi)><e(phi)| from the identity.
double pom_completeness_residual(const Spectrum &spectrum, int grid_points);

/// Truncated Dirichlet kernel sum_{n=-dmax}^{dmax} e^{i n (phi - phi')};
/// tends to the Dirac comb as dmax grows.
double orthogonality_check_two_mode(int dmax, double phi, double phi_prime);

/// Trapezoid integral of the Dirichlet kernel over one period, divided by
/// 2pi. Equals 1 for every dmax when the grid resolves the top harmonic.
double dirichlet_kernel_mass(int dmax, int grid_points);

}  // namespace phasekit

#endif
