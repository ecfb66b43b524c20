#ifndef PHASEKIT_SIMULATE_H
#define PHASEKIT_SIMULATE_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phasekit/cost.h"
#include "phasekit/spectrum.h"

namespace phasekit {

inline constexpr int kSamplerGrid = 4096;

/// Inverse-CDF sampler for the error law Delta = phi_est - phi_true of the
/// optimal covariant POM. The CDF is evaluated exactly at the grid nodes and
/// interpolated linearly inside each cell.
class ErrorLawSampler {
   public:
    explicit ErrorLawSampler(const ReducedState &state, int grid_points = kSamplerGrid);

    /// Delta in [0, 2pi) for u in [0, 1).
    double quantile(double u) const;
    /// Piecewise-linear grid CDF at Delta in [0, 2pi].
    double grid_cdf(double delta) const;
    /// Exact CDF of the trigonometric density at Delta in [0, 2pi].
    double exact_cdf(double delta) const;

    int grid_points() const noexcept {
        return static_cast<int>(cdf_.size()) - 1;
    }

   private:
    std::vector<double> autocorrelation_;
    std::vector<double> cdf_;
};

struct SimulationRun {
    ReducedState state;
    double phi_true = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
    /// Estimates phi_est in [0, 2pi).
    std::vector<double> samples;
};

/// Draw i uses counter i of the seeded stream, so the result does not depend
/// on `threads`.
SimulationRun sample_estimates(const ReducedState &state, double phi_true, std::size_t n_samples, std::uint64_t seed, int threads = 1);

/// (phi_est - phi_true) reduced to [0, 2pi).
std::vector<double> wrapped_differences(const SimulationRun &run);

struct CostEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

CostEstimate empirical_cost(const SimulationRun &run, const CostModel &model);

std::vector<std::size_t> histogram(const SimulationRun &run, int bins);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample critical value sqrt(-ln(alpha/2)/2) sqrt((n+m)/(nm)).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

/// Below this many samples per arm the KS threshold is too wide to detect
/// anything useful.
inline constexpr std::size_t kMinCovarianceSamples = 1000;

struct CovarianceResult {
    double statistic = 0.0;
    double critical_value = 0.0;
    bool passed = false;
};

/// Compares the error laws observed at two true phases.
CovarianceResult covariance_test(
    const ReducedState &state,
    double phi_a,
    double phi_b,
    std::size_t n_samples,
    std::uint64_t seed_a,
    std::uint64_t seed_b,
    double alpha = 1e-3,
    int threads = 1);

}  // namespace phasekit

#endif
