#include "phasekit/bessel.h"

#include <cmath>
#include <string>

#include "phasekit/error.h"

namespace phasekit {

namespace {

constexpr double kRescaleThreshold = 1e250;

void check_envelope(double order, double x) {
    if (!(order >= 0.0) || order > kBesselMaxOrder || !(x >= 0.0) || x > kBesselMaxArgument) {
        fail(ErrorKind::OutOfEnvelope, "Bessel J needs 0 <= order <= 500 and 0 <= x <= 500 (got order " +
                                           std::to_string(order) + ", x " + std::to_string(x) + ")");
    }
}

/// Miller sweep: returns J_{alpha+k}(x), k = 0 .. top, for alpha in [0, 1).
std::vector<double> miller_sweep(double alpha, int top, double x) {
    const int start = std::max(top, static_cast<int>(std::ceil(x))) + 40 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
    std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
    f[static_cast<std::size_t>(start) + 1] = 0.0;
    f[static_cast<std::size_t>(start)] = 1e-300;
    for (int k = start; k >= 1; --k) {
        const auto i = static_cast<std::size_t>(k);
        f[i - 1] = 2.0 * (alpha + k) / x * f[i] - f[i + 1];
        if (std::abs(f[i - 1]) > kRescaleThreshold) {
            for (std::size_t j = i - 1; j < f.size(); ++j) {
                f[j] /= kRescaleThreshold;
            }
        }
    }

    // sum_k d_k J_{alpha+2k} with d_0 = 1 and d_k = (alpha+2k) prod_{j<k}(alpha+j)/k!.
    double norm = f[0];
    double g = 1.0;
    for (int k = 1; 2 * k <= start; ++k) {
        if (k > 1) {
            g *= (alpha + k - 1) / k;
        }
        norm += (alpha + 2 * k) * g * f[static_cast<std::size_t>(2 * k)];
    }
    const double target = std::exp(alpha * std::log(x / 2.0) - std::lgamma(alpha + 1.0));
    const double scale = target / norm;
    f.resize(static_cast<std::size_t>(top) + 1);
    for (double &v : f) {
        v *= scale;
    }
    return f;
}

}  // namespace

bool bessel_series_regime(double order, double x) {
    return x <= 8.0 || x * x <= 4.0 * (order + 1.0);
}

double bessel_j_series(double order, double x) {
    check_envelope(order, x);
    if (x == 0.0) {
        return order == 0.0 ? 1.0 : 0.0;
    }
    const double half = 0.5 * x;
    const double q = -half * half;
    double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (k * (order + k));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && k > half) {
            break;
        }
    }
    return sum;
}

double bessel_j(double order, double x) {
    check_envelope(order, x);
    if (x == 0.0) {
        return order == 0.0 ? 1.0 : 0.0;
    }
    if (bessel_series_regime(order, x)) {
        return bessel_j_series(order, x);
    }
    const double base = std::floor(order);
    return miller_sweep(order - base, static_cast<int>(base), x).back();
}

std::vector<double> bessel_j_sequence(double order, int count, double x) {
    if (count < 1) {
        fail(ErrorKind::InvalidArgument, "Bessel sequence needs count >= 1");
    }
    check_envelope(order + count - 1, x);
    check_envelope(order, x);
    std::vector<double> out(static_cast<std::size_t>(count), 0.0);
    if (x == 0.0) {
        if (order == 0.0) {
            out[0] = 1.0;
        }
        return out;
    }
    const double base = std::floor(order);
    const int offset = static_cast<int>(base);
    auto f = miller_sweep(order - base, offset + count - 1, x);
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(offset + k)];
    }
    return out;
}

}  // namespace phasekit
