#include "phasekit/two_mode.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "phasekit/bessel.h"
#include "phasekit/error.h"

namespace phasekit {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        fail(ErrorKind::InvalidArgument, "lambda must be >= 0 (negative Bessel orders are unsupported)");
    }
}

void check_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        fail(ErrorKind::InvalidArgument, "mu must be positive and finite");
    }
}

/// J_{lambda+n}(x), n = 0 .. n_max, plus the truncation test against the full
/// two-sided sum of squares.
struct BesselColumn {
    std::vector<double> j;
    double sum_squares = 0.0;
    bool converged = false;
};

BesselColumn bessel_column(double lambda, double x, int n_max) {
    BesselColumn col;
    col.j = bessel_j_sequence(lambda, n_max + 1, x);
    col.sum_squares = col.j[0] * col.j[0];
    for (int n = 1; n <= n_max; ++n) {
        col.sum_squares += 2.0 * col.j[static_cast<std::size_t>(n)] * col.j[static_cast<std::size_t>(n)];
    }
    // Weighting the last term by n also bounds the photon-number tail.
    const double last = std::max(n_max, 1) * col.j.back() * col.j.back();
    col.converged = last <= kTailTolerance * col.sum_squares;
    return col;
}

TwoModeSolution build(double lambda, double mu, int n_max, const BesselColumn &col) {
    TwoModeSolution s;
    s.lambda = lambda;
    s.mu = mu;
    s.x = 2.0 / mu;
    s.n_max = n_max;
    s.k = 1.0 / std::sqrt(col.sum_squares);
    s.h.resize(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
        s.h[static_cast<std::size_t>(n + n_max)] = s.k * col.j[static_cast<std::size_t>(std::abs(n))];
    }
    return s;
}

double bisect_root(double lambda, double a, double b, double fa) {
    double fm = fa;
    double m = a;
    for (int iter = 0; iter < 200; ++iter) {
        m = 0.5 * (a + b);
        fm = matching_residual_x(lambda, m);
        if (fm == 0.0 || (std::abs(fm) < 1e-13 && b - a < 1e-12) || b - a <= 4e-16 * m) {
            break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    if (std::abs(fm) >= 1e-12) {
        fail(ErrorKind::SolverFailure, "bisection stalled at |residual| = " + std::to_string(std::abs(fm)));
    }
    return m;
}

}  // namespace

double TwoModeSolution::h_at(int n) const {
    if (std::abs(n) > n_max) {
        return 0.0;
    }
    return h[static_cast<std::size_t>(n + n_max)];
}

TwoModeSolution two_mode_coeffs(double lambda, double mu, int n_max) {
    check_lambda(lambda);
    check_mu(mu);
    if (n_max < 1) {
        fail(ErrorKind::InvalidArgument, "two-mode truncation needs n_max >= 1");
    }
    const double x = 2.0 / mu;
    auto col = bessel_column(lambda, x, n_max);
    if (!col.converged) {
        fail(ErrorKind::TailNotConverged, "J^2 tail at n_max = " + std::to_string(n_max) +
                                              " exceeds the relative tolerance; raise n_max");
    }
    return build(lambda, mu, n_max, col);
}

TwoModeSolution two_mode_coeffs_adaptive(double lambda, double mu, int n_max_cap) {
    check_lambda(lambda);
    check_mu(mu);
    const double x = 2.0 / mu;
    int n_max = std::max(4, static_cast<int>(std::ceil(x)) + 8);
    while (true) {
        n_max = std::min(n_max, n_max_cap);
        auto col = bessel_column(lambda, x, n_max);
        if (col.converged) {
            return build(lambda, mu, n_max, col);
        }
        if (n_max >= n_max_cap) {
            fail(ErrorKind::TailNotConverged, "J^2 tail still above tolerance at the n_max cap " +
                                                  std::to_string(n_max_cap));
        }
        n_max += 8;
    }
}

TwoModeSolution vacuum_solution() {
    TwoModeSolution s;
    s.lambda = 0.0;
    s.mu = std::numeric_limits<double>::infinity();
    s.x = 0.0;
    s.k = 1.0;
    s.n_max = 1;
    s.h = {0.0, 1.0, 0.0};
    s.mean_photons = 0.0;
    s.cost = 2.0;
    return s;
}

double two_mode_recursion_residual(const TwoModeSolution &s) {
    double worst = 0.0;
    for (int n = -s.n_max + 1; n <= s.n_max - 1; ++n) {
        const double r = s.h_at(n + 1) + s.h_at(n - 1) - s.mu * (s.lambda + std::abs(n)) * s.h_at(n);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

double two_mode_cost(const TwoModeSolution &s) {
    double overlap = 0.0;
    for (int n = -s.n_max; n < s.n_max; ++n) {
        overlap += s.h_at(n) * s.h_at(n + 1);
    }
    return 2.0 - 2.0 * overlap;
}

double two_mode_cost_half_sum(const TwoModeSolution &s) {
    double half = 0.0;
    for (int n = 0; n < s.n_max; ++n) {
        half += s.h_at(n) * s.h_at(n + 1);
    }
    // Bonds (n, n+1) for n >= 0 mirror onto (-n-1, -n).
    return 2.0 - 4.0 * half;
}

double matching_residual_x(double lambda, double x) {
    check_lambda(lambda);
    return lambda * bessel_j(lambda, x) - x * bessel_j(lambda + 1.0, x);
}

double matching_residual(double lambda, double mu) {
    check_mu(mu);
    return matching_residual_x(lambda, 2.0 / mu);
}

std::vector<double> find_matching_branches(double lambda, double x_lo, double x_hi, int max_roots) {
    check_lambda(lambda);
    if (!(x_lo > 0.0) || !(x_hi > x_lo) || !std::isfinite(x_hi)) {
        fail(ErrorKind::InvalidArgument, "x range must satisfy 0 < x_lo < x_hi < inf");
    }
    const int steps = std::max(1, static_cast<int>(std::ceil((x_hi - x_lo) / kRootGridStep)));
    const double h = (x_hi - x_lo) / steps;
    std::vector<double> mus;
    double a = x_lo;
    double fa = matching_residual_x(lambda, a);
    for (int i = 1; i <= steps && static_cast<int>(mus.size()) < max_roots; ++i) {
        const double b = i == steps ? x_hi : x_lo + i * h;
        const double fb = matching_residual_x(lambda, b);
        if (fa == 0.0) {
            mus.push_back(2.0 / a);
        } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            mus.push_back(2.0 / bisect_root(lambda, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0 && static_cast<int>(mus.size()) < max_roots) {
        mus.push_back(2.0 / a);
    }
    if (mus.empty()) {
        fail(ErrorKind::NoRootsInRange, "no matching root for lambda = " + std::to_string(lambda) + " in x range [" +
                                            std::to_string(x_lo) + ", " + std::to_string(x_hi) + "]");
    }
    return mus;
}

double mean_photon_number(const TwoModeSolution &s) {
    if (s.is_vacuum()) {
        return 0.0;
    }
    if (s.h.empty()) {
        fail(ErrorKind::InvalidArgument, "solution has no coefficients");
    }
    auto col = bessel_column(s.lambda, s.x, s.n_max);
    double weighted = 0.0;
    for (int n = 1; n <= s.n_max; ++n) {
        weighted += n * col.j[static_cast<std::size_t>(n)] * col.j[static_cast<std::size_t>(n)];
    }
    const double last = s.n_max * col.j.back() * col.j.back();
    if (last > kTailTolerance * col.sum_squares) {
        fail(ErrorKind::TailNotConverged, "photon-number tail has not converged at n_max = " + std::to_string(s.n_max));
    }
    return 2.0 * s.k * s.k * weighted;
}

double mean_photon_number_direct(const TwoModeSolution &s) {
    double n_mean = 0.0;
    for (int n = -s.n_max; n <= s.n_max; ++n) {
        n_mean += std::abs(n) * s.h_at(n) * s.h_at(n);
    }
    return n_mean;
}

TwoModeScan optimize_two_mode(std::span<const double> lambda_grid, double x_lo, double x_hi, int n_max_cap, int threads) {
    if (lambda_grid.empty()) {
        fail(ErrorKind::InvalidArgument, "lambda grid is empty");
    }
    for (double lambda : lambda_grid) {
        check_lambda(lambda);
    }
    if (!(x_lo > 0.0) || !(x_hi > x_lo)) {
        fail(ErrorKind::InvalidArgument, "x range must satisfy 0 < x_lo < x_hi");
    }

    std::vector<std::vector<TwoModeSolution>> per_lambda(lambda_grid.size());
    std::vector<std::exception_ptr> errors(lambda_grid.size());
    auto work = [&](std::size_t i) {
        try {
            std::vector<double> mus;
            try {
                mus = find_matching_branches(lambda_grid[i], x_lo, x_hi);
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::NoRootsInRange) {
                    throw;
                }
            }
            for (double mu : mus) {
                auto s = two_mode_coeffs_adaptive(lambda_grid[i], mu, n_max_cap);
                s.mean_photons = mean_photon_number(s);
                s.cost = two_mode_cost(s);
                per_lambda[i].push_back(std::move(s));
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, lambda_grid.size());
    if (workers == 1) {
        for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
            work(i);
        }
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < lambda_grid.size(); i += workers) {
                    work(i);
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    TwoModeScan scan;
    for (auto &group : per_lambda) {
        for (auto &s : group) {
            scan.solutions.push_back(std::move(s));
        }
    }
    if (scan.solutions.empty()) {
        fail(ErrorKind::NoRootsInRange, "no matching roots for any lambda in the grid");
    }
    std::stable_sort(scan.solutions.begin(), scan.solutions.end(), [](const auto &a, const auto &b) {
        if (a.mean_photons != b.mean_photons) {
            return a.mean_photons < b.mean_photons;
        }
        return a.cost < b.cost;
    });

    scan.frontier.push_back(vacuum_solution());
    double best = scan.frontier.back().cost;
    for (const auto &s : scan.solutions) {
        if (s.cost < best) {
            best = s.cost;
            scan.frontier.push_back(s);
        }
    }
    return scan;
}

}  // namespace phasekit
