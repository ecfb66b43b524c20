#ifndef PHASEKIT_COST_H
#define PHASEKIT_COST_H

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/spectrum.h"

namespace phasekit {

using HermitianMatrix = Eigen::MatrixXcd;

/// Even 2pi-periodic cost C(phi) = -sum_{l=0}^{L} c_l cos(l phi).
struct CostModel {
    std::vector<double> coeffs;
    /// c_l >= 0 for every l >= 1.
    bool holevo = true;

    static CostModel from_coeffs(std::vector<double> coeffs);

    int order() const noexcept {
        return static_cast<int>(coeffs.size()) - 1;
    }
    double coeff(int l) const noexcept {
        return l >= 0 && l < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(l)] : 0.0;
    }
};

enum class BuiltinCost { Likelihood, Variance2Pi, Fidelity };

/// 4 sin^2(phi/2) = 2 - 2 cos(phi).
CostModel variance_cost();
/// Truncated Fourier series of -delta_2pi(phi). The true comb has infinitely
/// many harmonics; windows of size W only ever see c_l for l < W.
CostModel likelihood_cost(int order);
/// 1 - |<psi|exp(i H phi)|psi>|^2, harmonics capped at `order`.
CostModel fidelity_cost(const ReducedState &state, int order);
/// Dispatches to the three constructors above; `state` is required for
/// fidelity only.
CostModel builtin_cost(BuiltinCost kind, int order, const ReducedState *state = nullptr);

double evaluate_cost(const CostModel &model, double phi);

/// Positive operator defining a covariant POM in the reduced basis.
struct XiMatrix {
    Spectrum spectrum;
    HermitianMatrix entries;
    /// Integer epsilon_n with xi_nm = exp(i pi (eps_n - eps_m)), when known.
    std::optional<std::vector<int>> rephasing;

    /// Checks shape, Hermiticity, unit diagonal and |xi_nm| <= 1.
    static XiMatrix validated(Spectrum spectrum, HermitianMatrix entries);
    double min_eigenvalue() const;
};

/// The two admissible parity witnesses on an integer window: eps_n = 0 or
/// eps_n = n. Zero coefficients match either sign. Returns the witness, or
/// nothing when sign(c_l) fits neither pattern for 1 <= l < window size.
std::optional<std::vector<int>> factorize_signs(const CostModel &model, const Spectrum &spectrum);

/// xi_nm = sign(c_|n-m|) realized through the parity witness. Throws
/// NonFactorizableSigns when no witness exists.
XiMatrix optimal_xi(const CostModel &model, const Spectrum &spectrum);

/// <n|C|m> = -c_0 on the diagonal and -(1/2) c_|n-m| xi_nm off it.
HermitianMatrix cost_operator_matrix(const CostModel &model, const XiMatrix &xi);

/// Closed-form minimum average cost over covariant POMs for the given state.
double min_cost(const CostModel &model, const ReducedState &state);

/// Trapezoid-rule integral of C(Delta) p(Delta) for the POM defined by xi.
/// Exact once grid_points exceeds the highest harmonic of the integrand.
double average_cost_quadrature(const CostModel &model, const ReducedState &state, const XiMatrix &xi, int grid_points);

/// Average cost of a density matrix on the window under the all-ones POM:
/// -c_0 tr(rho) - sum_{l>=1} c_l sum_n Re <n|rho|n+l>.
double mixed_state_cost(const CostModel &model, const HermitianMatrix &rho);

/// <w|C|w> for real weights.
double quadratic_form(const HermitianMatrix &matrix, std::span<const double> weights);

}  // namespace phasekit

#endif
