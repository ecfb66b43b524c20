#include "phasekit/cost.h"

#include <cmath>
#include <numbers>

#include "phasekit/error.h"
#include "phasekit/pom.h"

namespace phasekit {

namespace {

int sign_of(double c) {
    return c < 0.0 ? -1 : 1;
}

void require_matching(const Spectrum &a, const Spectrum &b, const char *what) {
    if (a != b) {
        fail(ErrorKind::DimensionMismatch, std::string(what) + ": spectra differ (" + to_string(a) + " vs " +
                                               to_string(b) + ")");
    }
}

}  // namespace

CostModel CostModel::from_coeffs(std::vector<double> coeffs) {
    if (coeffs.empty()) {
        fail(ErrorKind::InvalidArgument, "cost model needs at least c_0");
    }
    bool holevo = true;
    for (std::size_t l = 1; l < coeffs.size(); ++l) {
        if (!std::isfinite(coeffs[l])) {
            fail(ErrorKind::InvalidArgument, "cost coefficients must be finite");
        }
        holevo = holevo && coeffs[l] >= 0.0;
    }
    return {std::move(coeffs), holevo};
}

CostModel variance_cost() {
    return CostModel::from_coeffs({-2.0, 2.0});
}

CostModel likelihood_cost(int order) {
    if (order < 1) {
        fail(ErrorKind::InvalidArgument, "likelihood truncation order L >= 1 required");
    }
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 1.0 / std::numbers::pi);
    c[0] = 0.5 / std::numbers::pi;
    return CostModel::from_coeffs(std::move(c));
}

CostModel fidelity_cost(const ReducedState &state, int order) {
    if (order < 1) {
        fail(ErrorKind::InvalidArgument, "fidelity truncation order L >= 1 required");
    }
    auto w = state.weights();
    const int size = static_cast<int>(w.size());
    const int top = std::min(order, size - 1);
    // |sum_n w_n^2 e^{i n phi}|^2 = sum_n w_n^4 + sum_{l>=1} 2 sum_n w_n^2 w_{n+l}^2 cos(l phi).
    std::vector<double> c(static_cast<std::size_t>(top) + 1, 0.0);
    for (int l = 0; l <= top; ++l) {
        double s = 0.0;
        for (int n = 0; n + l < size; ++n) {
            s += w[n] * w[n] * w[n + l] * w[n + l];
        }
        c[static_cast<std::size_t>(l)] = l == 0 ? s - 1.0 : 2.0 * s;
    }
    return CostModel::from_coeffs(std::move(c));
}

CostModel builtin_cost(BuiltinCost kind, int order, const ReducedState *state) {
    switch (kind) {
        case BuiltinCost::Variance2Pi:
            return variance_cost();
        case BuiltinCost::Likelihood:
            return likelihood_cost(order);
        case BuiltinCost::Fidelity:
            if (state == nullptr) {
                fail(ErrorKind::InvalidArgument, "fidelity cost needs a state");
            }
            return fidelity_cost(*state, order);
    }
    fail(ErrorKind::InvalidArgument, "unknown builtin cost");
}

double evaluate_cost(const CostModel &model, double phi) {
    double s = 0.0;
    for (std::size_t l = 0; l < model.coeffs.size(); ++l) {
        s -= model.coeffs[l] * std::cos(static_cast<double>(l) * phi);
    }
    return s;
}

XiMatrix XiMatrix::validated(Spectrum spectrum, HermitianMatrix entries) {
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    if (entries.rows() != n || entries.cols() != n) {
        fail(ErrorKind::DimensionMismatch, "xi matrix shape does not match the window");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(entries(i, i) - Complex(1.0, 0.0)) > 1e-12) {
            fail(ErrorKind::InvalidArgument, "xi must have unit diagonal");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(entries(i, j) - std::conj(entries(j, i))) > 1e-12) {
                fail(ErrorKind::NonHermitianInput, "xi must be Hermitian");
            }
            if (std::abs(entries(i, j)) > 1.0 + 1e-12) {
                fail(ErrorKind::InvalidArgument, "xi entries must satisfy |xi_nm| <= 1");
            }
        }
    }
    return {spectrum, std::move(entries), std::nullopt};
}

double XiMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<HermitianMatrix> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::optional<std::vector<int>> factorize_signs(const CostModel &model, const Spectrum &spectrum) {
    const int size = static_cast<int>(spectrum.size());
    const int top = std::min(model.order(), size - 1);
    bool constant = true;
    bool alternating = true;
    for (int l = 1; l <= top; ++l) {
        const double c = model.coeff(l);
        if (c == 0.0) {
            continue;
        }
        constant = constant && sign_of(c) == 1;
        alternating = alternating && sign_of(c) == (l % 2 == 0 ? 1 : -1);
    }
    std::vector<int> eps(spectrum.size(), 0);
    if (constant) {
        return eps;
    }
    if (alternating) {
        for (std::size_t i = 0; i < eps.size(); ++i) {
            eps[i] = spectrum.eigenvalue(i);
        }
        return eps;
    }
    return std::nullopt;
}

XiMatrix optimal_xi(const CostModel &model, const Spectrum &spectrum) {
    auto eps = factorize_signs(model, spectrum);
    if (!eps) {
        fail(ErrorKind::NonFactorizableSigns,
             "sign pattern of the cost coefficients admits no parity witness; positivity of xi is not guaranteed");
    }
    const auto n = static_cast<Eigen::Index>(spectrum.size());
    HermitianMatrix xi(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const int parity = ((*eps)[static_cast<std::size_t>(i)] - (*eps)[static_cast<std::size_t>(j)]) & 1;
            xi(i, j) = Complex(parity == 0 ? 1.0 : -1.0, 0.0);
        }
    }
    return {spectrum, std::move(xi), std::move(eps)};
}

HermitianMatrix cost_operator_matrix(const CostModel &model, const XiMatrix &xi) {
    const auto n = static_cast<Eigen::Index>(xi.spectrum.size());
    if (xi.entries.rows() != n || xi.entries.cols() != n) {
        fail(ErrorKind::DimensionMismatch, "xi matrix shape does not match its spectrum");
    }
    HermitianMatrix c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                c(i, j) = Complex(-model.coeff(0), 0.0);
            } else {
                const int l = static_cast<int>(i > j ? i - j : j - i);
                c(i, j) = -0.5 * model.coeff(l) * xi.entries(i, j);
            }
        }
    }
    return c;
}

double min_cost(const CostModel &model, const ReducedState &state) {
    if (!factorize_signs(model, state.spectrum())) {
        fail(ErrorKind::NonFactorizableSigns, "min_cost needs a factorizable sign pattern");
    }
    auto w = state.weights();
    const int size = static_cast<int>(w.size());
    const int top = std::min(model.order(), size - 1);
    double total = -model.coeff(0);
    for (int l = 1; l <= top; ++l) {
        double overlap = 0.0;
        for (int n = 0; n + l < size; ++n) {
            overlap += w[n] * w[n + l];
        }
        // Ordered pairs with |n - m| = l count each neighbour twice.
        total -= 0.5 * std::abs(model.coeff(l)) * 2.0 * overlap;
    }
    return total;
}

double average_cost_quadrature(const CostModel &model, const ReducedState &state, const XiMatrix &xi, int grid_points) {
    require_matching(state.spectrum(), xi.spectrum, "average_cost_quadrature");
    const int order = model.order();
    const int span = static_cast<int>(state.size()) - 1;
    if (grid_points < 4 * std::max(order, 1) || grid_points <= order + span) {
        fail(ErrorKind::GridTooCoarse, "quadrature needs grid_points >= 4 L and > L + window span (got " +
                                           std::to_string(grid_points) + ")");
    }
    const double step = 2.0 * std::numbers::pi / grid_points;
    double sum = 0.0;
    for (int j = 0; j < grid_points; ++j) {
        const double delta = j * step;
        sum += evaluate_cost(model, delta) * conditional_density(state, xi, delta, 0.0);
    }
    return sum * step;
}

double mixed_state_cost(const CostModel &model, const HermitianMatrix &rho) {
    const Eigen::Index size = rho.rows();
    if (rho.cols() != size) {
        fail(ErrorKind::DimensionMismatch, "density matrix must be square");
    }
    double total = -model.coeff(0) * rho.trace().real();
    for (int l = 1; l <= model.order() && l < size; ++l) {
        double s = 0.0;
        for (Eigen::Index n = 0; n + l < size; ++n) {
            s += rho(n, n + l).real();
        }
        total -= model.coeff(l) * s;
    }
    return total;
}

double quadratic_form(const HermitianMatrix &matrix, std::span<const double> weights) {
    const auto n = static_cast<Eigen::Index>(weights.size());
    if (matrix.rows() != n || matrix.cols() != n) {
        fail(ErrorKind::DimensionMismatch, "quadratic form: vector length does not match the matrix");
    }
    Eigen::VectorXcd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i) = weights[static_cast<std::size_t>(i)];
    }
    return (w.adjoint() * matrix * w)(0, 0).real();
}

}  // namespace phasekit
