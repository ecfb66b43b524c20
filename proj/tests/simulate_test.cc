#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.h"
#include "phasekit/cost.h"
#include "phasekit/error.h"
#include "phasekit/simulate.h"

using namespace phasekit;

namespace {

constexpr double kPi = std::numbers::pi;

ReducedState uniform2() {
    const double r = 1.0 / std::sqrt(2.0);
    return ReducedState(Spectrum::naturals(0, 1), {r, r});
}

ReducedState point() {
    return ReducedState(Spectrum::naturals(0, 1), {1.0, 0.0});
}

}  // namespace

TEST(Sampler, ExactCdfEndpointsAndShape) {
    const ErrorLawSampler s(uniform2());
    EXPECT_EQ(s.exact_cdf(0.0), 0.0);
    EXPECT_NEAR(s.exact_cdf(2.0 * kPi), 1.0, 1e-15);
    // (1 + cos D)/2pi integrates to (D + sin D)/2pi.
    for (double d = 0.1; d < 6.2; d += 0.3) {
        EXPECT_NEAR(s.exact_cdf(d), (d + std::sin(d)) / (2.0 * kPi), 1e-15);
        EXPECT_NEAR(s.grid_cdf(d), s.exact_cdf(d), 1e-6);
    }
    EXPECT_EQ(s.grid_points(), kSamplerGrid);
    EXPECT_THROW(ErrorLawSampler(uniform2(), 100), Error);
}

TEST(Sampler, QuantileInvertsGridCdf) {
    std::mt19937_64 gen(3);
    const ReducedState st(Spectrum::integers(-3, 3), oracle::random_unit_weights(gen, 7));
    const ErrorLawSampler s(st);
    for (double u = 0.0; u < 1.0; u += 0.0137) {
        const double d = s.quantile(u);
        EXPECT_GE(d, 0.0);
        EXPECT_LT(d, 2.0 * kPi);
        EXPECT_NEAR(s.grid_cdf(d), u, 1e-12);
    }
}

TEST(SampleEstimates, Determinism) {
    const auto a = sample_estimates(uniform2(), 0.4, 20000, 77);
    const auto b = sample_estimates(uniform2(), 0.4, 20000, 77);
    EXPECT_EQ(a.samples, b.samples);
    const auto c = sample_estimates(uniform2(), 0.4, 20000, 78);
    EXPECT_NE(a.samples, c.samples);
}

TEST(SampleEstimates, IndependentOfThreadCount) {
    const auto one = sample_estimates(uniform2(), 1.0, 50000, 5, 1);
    for (int t : {2, 3, 8}) {
        EXPECT_EQ(sample_estimates(uniform2(), 1.0, 50000, 5, t).samples, one.samples) << t;
    }
}

TEST(SampleEstimates, SamplesWrappedIntoPeriod) {
    const auto run = sample_estimates(uniform2(), 6.0, 10000, 1);
    EXPECT_EQ(run.samples.size(), 10000u);
    for (double v : run.samples) {
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 2.0 * kPi);
    }
    EXPECT_THROW(sample_estimates(uniform2(), 0.0, 0, 1), Error);
}

TEST(SampleEstimates, PointStateIsUniformChiSquare) {
    const auto run = sample_estimates(point(), 0.0, 100000, 2024);
    const auto counts = histogram(run, 16);
    const double expected = 100000.0 / 16.0;
    double chi2 = 0.0;
    for (auto c : counts) {
        chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    }
    // 15 degrees of freedom: the upper 1e-3 quantile is 37.697.
    EXPECT_LT(chi2, 37.697);
}

TEST(SampleEstimates, MeanCosineOfUniform2) {
    const auto run = sample_estimates(uniform2(), 0.0, 100000, 11);
    double sum = 0.0;
    double sum2 = 0.0;
    for (double v : run.samples) {
        sum += std::cos(v);
        sum2 += std::cos(v) * std::cos(v);
    }
    const double n = static_cast<double>(run.samples.size());
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, 0.5, 3.0 * se);
}

TEST(SampleEstimates, DkwBound) {
    std::mt19937_64 gen(12);
    const double delta = 1e-3;
    const std::size_t n = 100000;
    const double tol = 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
    for (int trial = 0; trial < 3; ++trial) {
        const ReducedState st(Spectrum::naturals(0, 5), oracle::random_unit_weights(gen, 6));
        const ErrorLawSampler sampler(st);
        const auto run = sample_estimates(st, 0.0, n, 100 + static_cast<std::uint64_t>(trial));
        auto diffs = wrapped_differences(run);
        std::sort(diffs.begin(), diffs.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < diffs.size(); ++i) {
            const double f = sampler.grid_cdf(diffs[i]);
            worst = std::max({worst, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
        }
        EXPECT_LT(worst, tol);
    }
}

TEST(EmpiricalCost, Uniform2Variance) {
    const auto run = sample_estimates(uniform2(), 0.0, 100000, 7);
    const auto c = empirical_cost(run, variance_cost());
    EXPECT_NEAR(c.mean, 1.0, 3.0 * c.std_error);
    EXPECT_GT(c.std_error, 0.0);
}

TEST(EmpiricalCost, ConstantCostExact) {
    const auto run = sample_estimates(uniform2(), 0.3, 5000, 1);
    const auto c = empirical_cost(run, CostModel::from_coeffs({-0.625}));
    EXPECT_EQ(c.mean, 0.625);
    EXPECT_EQ(c.std_error, 0.0);
}

TEST(EmpiricalCost, PointStateVariance) {
    const auto run = sample_estimates(point(), 2.0, 100000, 9);
    const auto c = empirical_cost(run, variance_cost());
    EXPECT_NEAR(c.mean, 2.0, 3.0 * c.std_error);
}

TEST(EmpiricalCost, MatchesMinCostForBuiltinsOnRandomStates) {
    std::mt19937_64 gen(41);
    int misses = 0;
    int total = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const ReducedState st(Spectrum::naturals(0, 4), oracle::random_unit_weights(gen, 5));
        const auto run = sample_estimates(st, 0.5 * trial, 100000, 500 + static_cast<std::uint64_t>(trial));
        for (const auto &model : {variance_cost(), likelihood_cost(4), fidelity_cost(st, 4)}) {
            const auto c = empirical_cost(run, model);
            ++total;
            if (std::abs(c.mean - min_cost(model, st)) > 3.0 * c.std_error) {
                ++misses;
            }
        }
    }
    // Each check fails with probability ~0.0027 by chance; allow one.
    EXPECT_LE(misses, 1) << "of " << total;
}

TEST(Histogram, CountsSumToN) {
    const auto run = sample_estimates(uniform2(), 0.0, 12345, 3);
    const auto h = histogram(run, 7);
    std::size_t sum = 0;
    for (auto c : h) {
        sum += c;
    }
    EXPECT_EQ(sum, 12345u);
    EXPECT_THROW(histogram(run, 0), Error);
}

TEST(Ks, StatisticAndCritical) {
    EXPECT_EQ(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}), 0.0);
    EXPECT_EQ(ks_two_sample({1.0, 2.0}, {3.0, 4.0}), 1.0);
    EXPECT_NEAR(ks_two_sample({1.0, 3.0}, {2.0, 4.0}), 0.5, 1e-15);
    EXPECT_NEAR(ks_critical_value(100, 100, 0.05), 1.3581015157 * std::sqrt(0.02), 1e-9);
    EXPECT_THROW(ks_two_sample({}, {1.0}), Error);
    EXPECT_THROW(ks_critical_value(10, 10, 0.0), Error);
}

TEST(CovarianceTest, ShiftedPhasesAgree) {
    std::mt19937_64 gen(1);
    const ReducedState st(Spectrum::naturals(0, 3), oracle::random_unit_weights(gen, 4));
    const auto r = covariance_test(st, 0.0, kPi / 3.0, 100000, 1, 2);
    EXPECT_TRUE(r.passed) << r.statistic << " vs " << r.critical_value;
}

TEST(CovarianceTest, DetectsDifferentLaws) {
    const std::size_t n = 100000;
    const auto a = sample_estimates(uniform2(), 0.0, n, 1);
    const auto b = sample_estimates(point(), 0.0, n, 2);
    const double stat = ks_two_sample(wrapped_differences(a), wrapped_differences(b));
    EXPECT_GT(stat, ks_critical_value(n, n, 1e-3));
    // sup |(D + sin D)/2pi - D/2pi| = 1/(2pi) at D = pi/2.
    EXPECT_NEAR(stat, 1.0 / (2.0 * kPi), 0.02);
}

TEST(CovarianceTest, TinySamplesGiveWideThreshold) {
    const auto r = covariance_test(uniform2(), 0.0, 1.0, 10, 1, 2);
    EXPECT_GT(r.critical_value, 0.8);
    EXPECT_TRUE(r.passed);
    EXPECT_GT(ks_critical_value(kMinCovarianceSamples, kMinCovarianceSamples, 1e-3), 0.08);
}
