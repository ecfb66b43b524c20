#include "phasekit/pom.h"

#include <cmath>
#include <numbers>

#include "phasekit/error.h"

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

SGVector e_vector(const Spectrum &spectrum, double phi) {
    if (!std::isfinite(phi)) {
        fail(ErrorKind::InvalidArgument, "phase must be finite");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(spectrum.size()));
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = std::polar(1.0, spectrum.eigenvalue(i) * phi);
    }
    return {spectrum, phi, std::move(v)};
}

std::vector<double> weight_autocorrelation(const ReducedState &state) {
    auto w = state.weights();
    std::vector<double> a(w.size(), 0.0);
    for (std::size_t l = 0; l < w.size(); ++l) {
        for (std::size_t n = 0; n + l < w.size(); ++n) {
            a[l] += w[n] * w[n + l];
        }
    }
    return a;
}

double conditional_density(const ReducedState &state, double phi_est, double phi_true) {
    auto w = state.weights();
    const double delta = phi_est - phi_true;
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        s += w[i] * std::polar(1.0, -static_cast<double>(state.spectrum().eigenvalue(i)) * delta);
    }
    return std::norm(s) / kTwoPi;
}

double conditional_density(const ReducedState &state, const XiMatrix &xi, double phi_est, double phi_true) {
    if (state.spectrum() != xi.spectrum) {
        fail(ErrorKind::DimensionMismatch, "state and xi live on different windows");
    }
    auto w = state.weights();
    const double delta = phi_est - phi_true;
    const auto size = static_cast<Eigen::Index>(w.size());
    Complex s(0.0, 0.0);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
            const double gap = static_cast<double>(i - j);
            s += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] * xi.entries(i, j) *
                 std::polar(1.0, -gap * delta);
        }
    }
    return s.real() / kTwoPi;
}

Eigen::MatrixXcd DiscretePom::projector(std::size_t s) const {
    return vectors.at(s) * vectors.at(s).adjoint();
}

double DiscretePom::completeness_residual() const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(q, q);
    for (const auto &v : vectors) {
        sum += v * v.adjoint();
    }
    sum -= Eigen::MatrixXcd::Identity(q, q);
    return sum.cwiseAbs().maxCoeff();
}

DiscretePom discrete_pom_zq(int q) {
    if (q < 2) {
        fail(ErrorKind::InvalidArgument, "discrete POM needs q >= 2");
    }
    DiscretePom pom;
    pom.q = q;
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    for (int s = 0; s < q; ++s) {
        // Integer arithmetic on n*s mod q keeps the phases exact multiples of 2pi/q.
        Eigen::VectorXcd v(q);
        for (int n = 0; n < q; ++n) {
            v(n) = scale * std::polar(1.0, kTwoPi * ((n * s) % q) / q);
        }
        pom.phases.push_back(kTwoPi * s / q);
        pom.vectors.push_back(std::move(v));
    }
    return pom;
}

double discrete_pom_average_cost(const CostModel &model, const ReducedState &state) {
    const auto &spectrum = state.spectrum();
    if (spectrum.kind() != SpectrumKind::ModQ) {
        fail(ErrorKind::InvalidArgument, "discrete POM cost needs a zq spectrum");
    }
    const int q = spectrum.q();
    const auto pom = discrete_pom_zq(q);
    Eigen::VectorXcd psi(q);
    for (int n = 0; n < q; ++n) {
        psi(n) = state.weights()[static_cast<std::size_t>(n)];
    }
    // Integrand in the true phase has harmonics up to L + q - 1.
    const int grid = 2 * (model.order() + q) + 2;
    const double step = kTwoPi / grid;
    double total = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double phi_true = j * step;
        Eigen::VectorXcd shifted(q);
        for (int n = 0; n < q; ++n) {
            shifted(n) = psi(n) * std::polar(1.0, n * phi_true);
        }
        for (int s = 0; s < q; ++s) {
            const double p = std::norm(pom.vectors[static_cast<std::size_t>(s)].dot(shifted));
            total += p * evaluate_cost(model, pom.phases[static_cast<std::size_t>(s)] - phi_true);
        }
    }
    return total / grid;
}

double pom_completeness_residual(const Spectrum &spectrum, int grid_points) {
    const auto size = static_cast<int>(spectrum.size());
    if (grid_points < 2 * size) {
        fail(ErrorKind::GridTooCoarse, "completeness quadrature needs at least 2 x window size points");
    }
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(size, size);
    for (int j = 0; j < grid_points; ++j) {
        const auto e = e_vector(spectrum, kTwoPi * j / grid_points);
        sum += e.amplitudes * e.amplitudes.adjoint();
    }
    sum /= static_cast<double>(grid_points);
    sum -= Eigen::MatrixXcd::Identity(size, size);
    return sum.cwiseAbs().maxCoeff();
}

double orthogonality_check_two_mode(int dmax, double phi, double phi_prime) {
    if (dmax < 1) {
        fail(ErrorKind::InvalidArgument, "dmax >= 1 required");
    }
    const double t = phi - phi_prime;
    double s = 1.0;
    for (int n = 1; n <= dmax; ++n) {
        s += 2.0 * std::cos(n * t);
    }
    return s;
}

double dirichlet_kernel_mass(int dmax, int grid_points) {
    if (grid_points <= dmax) {
        fail(ErrorKind::GridTooCoarse, "grid must resolve the top harmonic of the kernel");
    }
    double s = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        s += orthogonality_check_two_mode(dmax, kTwoPi * j / grid_points, 0.0);
    }
    return s / grid_points;
}

}  // namespace phasekit
