#include "phasekit/optimizer.h"

#include <cmath>
#include <numbers>

#include "phasekit/error.h"

namespace phasekit {

ReducedState EigenSolution::as_state(const Spectrum &spectrum) const {
    std::vector<Complex> amps(static_cast<std::size_t>(vector.size()));
    for (Eigen::Index i = 0; i < vector.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = vector(i);
    }
    if (amps.size() != spectrum.size()) {
        fail(ErrorKind::DimensionMismatch, "eigenvector length does not match the window");
    }
    return ReducedState::from_amplitudes(spectrum, amps);
}

EigenSolution optimal_state_numeric(
    const HermitianMatrix &cost_matrix, std::optional<std::vector<double>> energy_diag, std::optional<double> mu_prime) {
    HermitianMatrix a = cost_matrix;
    if (mu_prime) {
        if (!energy_diag) {
            fail(ErrorKind::InvalidArgument, "an energy-constrained problem needs the energy diagonal");
        }
        if (static_cast<Eigen::Index>(energy_diag->size()) != a.rows()) {
            fail(ErrorKind::DimensionMismatch, "energy diagonal length does not match the cost matrix");
        }
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            a(i, i) -= *mu_prime * (*energy_diag)[static_cast<std::size_t>(i)];
        }
    }

    auto pair = min_eigenpair(a);
    Eigen::VectorXcd v = pair.vector;
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    v *= std::conj(v(largest)) / std::abs(v(largest));

    EigenSolution out;
    out.eigenvalue = pair.value;
    out.multiplicity = pair.multiplicity;
    out.eigenspace = std::move(pair.eigenspace);
    out.residual = (a * v - pair.value * v).norm();
    out.weights.resize(static_cast<std::size_t>(v.size()));
    bool real = true;
    bool nonneg = true;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.weights[static_cast<std::size_t>(i)] = std::abs(v(i));
        real = real && std::abs(v(i).imag()) <= 1e-12;
        nonneg = nonneg && v(i).real() >= -1e-12;
    }
    out.constant_sign = real && nonneg;
    if (out.constant_sign) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = Complex(std::abs(v(i)), 0.0);
        }
    }
    out.vector = std::move(v);
    return out;
}

std::vector<double> chebyshev_amplitudes(double theta, int n_max) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        fail(ErrorKind::InvalidArgument, "Chebyshev state needs 0 < theta < pi");
    }
    if (n_max < 1) {
        fail(ErrorKind::InvalidArgument, "Chebyshev state needs n_max >= 1");
    }
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
    double norm2 = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double v = std::sin((n + 1) * theta);
        // Nodes of the sine, e.g. every other n at theta = pi/2, are exact zeros.
        if (std::abs(v) < 1e-14) {
            v = 0.0;
        }
        w[static_cast<std::size_t>(n)] = v;
        norm2 += w[static_cast<std::size_t>(n)] * w[static_cast<std::size_t>(n)];
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (double &x : w) {
        x *= scale;
    }
    return w;
}

ReducedState chebyshev_state(double theta, int n_max) {
    auto w = chebyshev_amplitudes(theta, n_max);
    std::vector<Complex> amps(w.begin(), w.end());
    return ReducedState::from_amplitudes(Spectrum::naturals(0, n_max), amps);
}

double recursion_residual_w(std::span<const double> w, double lambda) {
    if (w.size() < 3) {
        fail(ErrorKind::InvalidArgument, "recursion residual needs at least 3 weights");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n + 2 < w.size(); ++n) {
        worst = std::max(worst, std::abs(w[n] + w[n + 2] - 2.0 * lambda * w[n + 1]));
    }
    return worst;
}

CosineSineUncertainty cosine_sine_uncertainty(std::span<const Complex> amplitudes) {
    const auto size = static_cast<Eigen::Index>(amplitudes.size());
    if (size < 1) {
        fail(ErrorKind::InvalidArgument, "uncertainty needs a non-empty state");
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(size + 1);
    for (Eigen::Index i = 0; i < size; ++i) {
        psi(i) = amplitudes[static_cast<std::size_t>(i)];
    }
    const double norm = psi.norm();
    if (norm == 0.0) {
        fail(ErrorKind::EmptyState, "state has no nonzero amplitude");
    }
    psi /= norm;

    // e+ |n> = |n+1>, e- |n> = |n-1> with e- |0> = 0.
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(size + 1);
    Eigen::VectorXcd down = Eigen::VectorXcd::Zero(size + 1);
    for (Eigen::Index i = 0; i < size; ++i) {
        up(i + 1) = psi(i);
        down(i) = psi(i + 1);
    }
    const Eigen::VectorXcd c = 0.5 * (up + down);
    const Eigen::VectorXcd s = (up - down) / Complex(0.0, 2.0);
    const double mean_c = psi.dot(c).real();
    const double mean_s = psi.dot(s).real();
    CosineSineUncertainty out;
    out.delta_cos = std::sqrt(std::max(0.0, c.squaredNorm() - mean_c * mean_c));
    out.delta_sin = std::sqrt(std::max(0.0, s.squaredNorm() - mean_s * mean_s));
    out.product = out.delta_cos * out.delta_sin;
    out.bound = 0.25 * std::norm(psi(0));
    return out;
}

}  // namespace phasekit
