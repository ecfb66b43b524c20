#ifndef PHASEKIT_TWO_MODE_H
#define PHASEKIT_TWO_MODE_H

#include <limits>
#include <span>
#include <vector>

namespace phasekit {

/// Relative size of the last retained J^2 term below which Bessel sums are
/// considered converged.
inline constexpr double kTailTolerance = 1e-14;
/// Largest bracketing step for matching-condition roots.
inline constexpr double kRootGridStep = 0.1;

/// Energy-constrained optimal state h_n = k J_{lambda+|n|}(x), x = 2/mu, on
/// the two-mode difference spectrum truncated to |n| <= n_max.
struct TwoModeSolution {
    double lambda = 0.0;
    double mu = 0.0;
    double x = 0.0;
    double k = 0.0;
    int n_max = 0;
    /// h_n stored at index n + n_max.
    std::vector<double> h;
    double mean_photons = std::numeric_limits<double>::quiet_NaN();
    double cost = std::numeric_limits<double>::quiet_NaN();

    double h_at(int n) const;
    /// True for the x -> 0 limit state h_n = delta_{n0} (mu infinite).
    bool is_vacuum() const noexcept {
        return x == 0.0;
    }
};

/// Fills h and k for a fixed truncation. Throws TailNotConverged when the
/// last retained J^2 exceeds kTailTolerance of the sum.
TwoModeSolution two_mode_coeffs(double lambda, double mu, int n_max);

/// Grows n_max until the tail criterion holds, up to n_max_cap.
TwoModeSolution two_mode_coeffs_adaptive(double lambda, double mu, int n_max_cap = 400);

/// The h_n = delta_{n0} endpoint (N = 0, cost 2).
TwoModeSolution vacuum_solution();

/// max_{|n| < n_max} |h_{n+1} + h_{n-1} - mu (lambda + |n|) h_n|.
double two_mode_recursion_residual(const TwoModeSolution &solution);

/// <C> = 2 - 2 sum_n h_n h_{n+1} for the cost operator 2 - e+ - e-.
double two_mode_cost(const TwoModeSolution &solution);

/// Same quantity from the n >= 0 half only, using h_n = h_{-n}.
double two_mode_cost_half_sum(const TwoModeSolution &solution);

/// x J'_lambda(x) written as lambda J_lambda(x) - x J_{lambda+1}(x).
double matching_residual_x(double lambda, double x);
/// Same with x = 2/mu.
double matching_residual(double lambda, double mu);

/// mu = 2/x for each sign change of the matching residual on
/// [x_lo, x_hi], in ascending x. Roots of even multiplicity are not seen.
std::vector<double> find_matching_branches(double lambda, double x_lo, double x_hi, int max_roots = std::numeric_limits<int>::max());

/// N = 2 k^2 sum_{n>=0} n J^2_{lambda+n}(x), recomputed from (lambda, x).
double mean_photon_number(const TwoModeSolution &solution);
/// N = sum_n |n| h_n^2 from the stored coefficients.
double mean_photon_number_direct(const TwoModeSolution &solution);

struct TwoModeScan {
    /// Every (lambda, branch) solution with N and cost filled, sorted by N.
    std::vector<TwoModeSolution> solutions;
    /// Vacuum endpoint followed by the solutions no other point beats in
    /// both N and cost; cost is non-increasing along it.
    std::vector<TwoModeSolution> frontier;
};

/// Runs the matching-root search for every lambda in the grid, builds the
/// Bessel states, and extracts the (N, cost) frontier. Work items are split
/// across `threads` and merged in (lambda, x) order.
TwoModeScan optimize_two_mode(std::span<const double> lambda_grid, double x_lo, double x_hi, int n_max_cap = 400, int threads = 1);

}  // namespace phasekit

#endif
