#include "phasekit/simulate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "phasekit/error.h"
#include "phasekit/pom.h"
#include "phasekit/rng.h"

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r >= kTwoPi ? 0.0 : r;
}

}  // namespace

ErrorLawSampler::ErrorLawSampler(const ReducedState &state, int grid_points)
    : autocorrelation_(weight_autocorrelation(state)) {
    if (grid_points < kSamplerGrid) {
        fail(ErrorKind::GridTooCoarse, "sampler grid needs at least 4096 cells");
    }
    cdf_.resize(static_cast<std::size_t>(grid_points) + 1);
    for (int j = 0; j <= grid_points; ++j) {
        cdf_[static_cast<std::size_t>(j)] = exact_cdf(kTwoPi * j / grid_points);
    }
    cdf_.front() = 0.0;
    cdf_.back() = 1.0;
    for (std::size_t j = 1; j < cdf_.size(); ++j) {
        cdf_[j] = std::clamp(cdf_[j], cdf_[j - 1], 1.0);
    }
}

double ErrorLawSampler::exact_cdf(double delta) const {
    double s = autocorrelation_[0] * delta;
    for (std::size_t l = 1; l < autocorrelation_.size(); ++l) {
        s += 2.0 * autocorrelation_[l] * std::sin(static_cast<double>(l) * delta) / static_cast<double>(l);
    }
    return s / kTwoPi;
}

double ErrorLawSampler::quantile(double u) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto j = static_cast<std::size_t>(std::distance(cdf_.begin(), it));
    j = std::clamp<std::size_t>(j, 1, cdf_.size() - 1);
    const double lo = cdf_[j - 1];
    const double hi = cdf_[j];
    const double cell = kTwoPi / static_cast<double>(cdf_.size() - 1);
    const double frac = hi > lo ? (u - lo) / (hi - lo) : 0.0;
    return std::min((static_cast<double>(j - 1) + frac) * cell, std::nextafter(kTwoPi, 0.0));
}

double ErrorLawSampler::grid_cdf(double delta) const {
    const double cell = kTwoPi / static_cast<double>(cdf_.size() - 1);
    const double pos = std::clamp(delta / cell, 0.0, static_cast<double>(cdf_.size() - 1));
    const auto j = std::min(static_cast<std::size_t>(pos), cdf_.size() - 2);
    const double frac = pos - static_cast<double>(j);
    return cdf_[j] + frac * (cdf_[j + 1] - cdf_[j]);
}

SimulationRun sample_estimates(const ReducedState &state, double phi_true, std::size_t n_samples, std::uint64_t seed, int threads) {
    if (n_samples < 1) {
        fail(ErrorKind::InvalidArgument, "n_samples >= 1 required");
    }
    if (!std::isfinite(phi_true)) {
        fail(ErrorKind::InvalidArgument, "true phase must be finite");
    }
    const ErrorLawSampler sampler(state);
    const CounterRng rng(seed);
    SimulationRun run{state, phi_true, n_samples, seed, std::vector<double>(n_samples)};

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            run.samples[i] = wrap(phi_true + sampler.quantile(rng.uniform_at(i)));
        }
    };
    const auto workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(1, n_samples / 4096));
    if (workers == 1) {
        fill(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_samples + workers - 1) / workers;
        for (std::size_t t = 0; t < workers; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(n_samples, begin + chunk);
            if (begin < end) {
                pool.emplace_back(fill, begin, end);
            }
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    return run;
}

std::vector<double> wrapped_differences(const SimulationRun &run) {
    std::vector<double> out(run.samples.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = wrap(run.samples[i] - run.phi_true);
    }
    return out;
}

CostEstimate empirical_cost(const SimulationRun &run, const CostModel &model) {
    if (run.samples.empty()) {
        fail(ErrorKind::InvalidArgument, "empirical cost needs a non-empty run");
    }
    // Welford: a constant integrand yields its value and zero spread exactly.
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double phi : run.samples) {
        const double c = evaluate_cost(model, phi - run.phi_true);
        ++k;
        const double d = c - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (c - mean);
    }
    CostEstimate out;
    out.mean = mean;
    if (k > 1) {
        const double variance = m2 / static_cast<double>(k - 1);
        out.std_error = std::sqrt(variance / static_cast<double>(k));
    }
    return out;
}

std::vector<std::size_t> histogram(const SimulationRun &run, int bins) {
    if (bins < 1) {
        fail(ErrorKind::InvalidArgument, "histogram needs at least one bin");
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double phi : run.samples) {
        auto b = static_cast<std::size_t>(phi / kTwoPi * bins);
        counts[std::min(b, counts.size() - 1)]++;
    }
    return counts;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        fail(ErrorKind::InvalidArgument, "KS test needs two non-empty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double worst = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) {
            ++i;
        }
        while (j < b.size() && b[j] == v) {
            ++j;
        }
        worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return worst;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
    if (n == 0 || m == 0 || !(alpha > 0.0 && alpha < 1.0)) {
        fail(ErrorKind::InvalidArgument, "KS critical value needs n, m >= 1 and 0 < alpha < 1");
    }
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return c * std::sqrt((dn + dm) / (dn * dm));
}

CovarianceResult covariance_test(
    const ReducedState &state,
    double phi_a,
    double phi_b,
    std::size_t n_samples,
    std::uint64_t seed_a,
    std::uint64_t seed_b,
    double alpha,
    int threads) {
    const auto run_a = sample_estimates(state, phi_a, n_samples, seed_a, threads);
    const auto run_b = sample_estimates(state, phi_b, n_samples, seed_b, threads);
    CovarianceResult out;
    out.statistic = ks_two_sample(wrapped_differences(run_a), wrapped_differences(run_b));
    out.critical_value = ks_critical_value(n_samples, n_samples, alpha);
    out.passed = out.statistic < out.critical_value;
    return out;
}

}  // namespace phasekit
