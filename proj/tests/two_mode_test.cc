#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oracles.h"
#include "phasekit/bessel.h"
#include "phasekit/error.h"
#include "phasekit/two_mode.h"

using namespace phasekit;

namespace {

const double kJ1Zeros[] = {3.8317059702075123, 7.0155866698156188, 10.173468135062722};

double normalization(const TwoModeSolution &s) {
    double t = 0.0;
    for (double h : s.h) {
        t += h * h;
    }
    return t;
}

}  // namespace

TEST(TwoModeCoeffs, SymmetricAndNormalized) {
    for (double lambda : {0.0, 0.4, 1.0, 3.7}) {
        for (double mu : {0.3, 1.0, 5.0}) {
            const auto s = two_mode_coeffs_adaptive(lambda, mu);
            for (int n = 1; n <= s.n_max; ++n) {
                EXPECT_EQ(s.h_at(n), s.h_at(-n));
            }
            EXPECT_NEAR(normalization(s), 1.0, 1e-12);
            EXPECT_EQ(s.h_at(s.n_max + 1), 0.0);
            EXPECT_NEAR(s.x, 2.0 / mu, 1e-15);
        }
    }
}

TEST(TwoModeCoeffs, CoefficientsAreScaledBessel) {
    const auto s = two_mode_coeffs(0.6, 0.8, 30);
    for (int n = -30; n <= 30; ++n) {
        EXPECT_NEAR(s.h_at(n), s.k * bessel_j(0.6 + std::abs(n), 2.5), 1e-14);
    }
}

TEST(TwoModeCoeffs, LargeMuConcentratesOnZero) {
    const auto s = two_mode_coeffs_adaptive(0.0, 1e4);
    EXPECT_NEAR(s.h_at(0), 1.0, 1e-7);
    EXPECT_NEAR(s.h_at(1), 0.0, 1e-4);
    EXPECT_LT(mean_photon_number_direct(s), 1e-7);
}

TEST(TwoModeCoeffs, TailNotConverged) {
    try {
        two_mode_coeffs(0.0, 0.05, 5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::TailNotConverged);
    }
    EXPECT_THROW(two_mode_coeffs(-0.5, 1.0, 10), Error);
    EXPECT_THROW(two_mode_coeffs(0.0, 0.0, 10), Error);
}

TEST(MatchingResidual, LambdaZero) {
    for (double x : {0.7, 2.0, 5.5, 11.0}) {
        EXPECT_NEAR(matching_residual_x(0.0, x), -x * bessel_j(1.0, x), 1e-15);
    }
    EXPECT_NEAR(matching_residual(0.0, 2.0), -0.44005058574493355, 1e-15);
    EXPECT_NEAR(matching_residual_x(0.0, kJ1Zeros[0]), 0.0, 1e-14);
}

TEST(MatchingResidual, IsXTimesDerivative) {
    for (double lambda : {0.5, 1.0, 2.3}) {
        for (double x : {0.8, 3.1, 9.7}) {
            const double h = 1e-5;
            const double deriv = (bessel_j(lambda, x + h) - bessel_j(lambda, x - h)) / (2.0 * h);
            EXPECT_NEAR(matching_residual_x(lambda, x), x * deriv, 1e-8);
        }
    }
}

TEST(MatchingResidual, VanishesAtZeroBoundary) {
    for (double lambda : {0.5, 1.0, 2.0}) {
        const double small = matching_residual_x(lambda, 1e-3);
        const double tiny = matching_residual_x(lambda, 1e-9);
        EXPECT_GT(tiny, 0.0);
        EXPECT_LT(tiny, small);
        // Leading behaviour lambda J_lambda(x) ~ lambda (x/2)^lambda / Gamma(lambda + 1).
        EXPECT_NEAR(tiny / (lambda * std::pow(0.5e-9, lambda) / std::tgamma(lambda + 1.0)), 1.0, 1e-6);
    }
}

TEST(FindMatchingBranches, FirstZerosOfJ1) {
    const auto mus = find_matching_branches(0.0, 0.5, 12.0);
    ASSERT_EQ(mus.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(2.0 / mus[i], kJ1Zeros[i], 1e-9);
        EXPECT_LT(std::abs(matching_residual(0.0, mus[i])), 1e-12);
        // Independent bisection on the series oracle.
        const double ref = oracle::bisect([](double x) { return oracle::series_bessel_j(1.0, x); },
                                          kJ1Zeros[i] - 0.5, kJ1Zeros[i] + 0.5);
        EXPECT_NEAR(2.0 / mus[i], ref, 1e-9);
    }
    EXPECT_EQ(find_matching_branches(0.0, 0.5, 12.0, 2).size(), 2u);
}

TEST(FindMatchingBranches, NoRootsBelowFirstZero) {
    try {
        find_matching_branches(0.0, 0.5, 3.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoRootsInRange);
    }
}

TEST(FindMatchingBranches, RootsAreDerivativeZeros) {
    for (double lambda : {0.25, 1.0, 2.0}) {
        for (double mu : find_matching_branches(lambda, 0.5, 20.0)) {
            EXPECT_LT(std::abs(matching_residual(lambda, mu)), 1e-12);
            const auto s = two_mode_coeffs_adaptive(lambda, mu);
            EXPECT_LT(two_mode_recursion_residual(s), 1e-9);
        }
    }
    // j'_{1,1} = 1.8411837813406593.
    EXPECT_NEAR(2.0 / find_matching_branches(1.0, 0.5, 3.0).at(0), 1.8411837813406593, 1e-9);
}

TEST(TwoModeRecursion, OffRootFailsAtCentre) {
    const auto s = two_mode_coeffs_adaptive(0.0, 2.0 / 3.0);
    EXPECT_GT(two_mode_recursion_residual(s), 1e-3);
}

TEST(MeanPhotonNumber, Cases) {
    EXPECT_EQ(mean_photon_number_direct(vacuum_solution()), 0.0);
    EXPECT_EQ(mean_photon_number(vacuum_solution()), 0.0);

    TwoModeSolution synthetic;
    synthetic.n_max = 1;
    synthetic.h = {1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
    EXPECT_NEAR(mean_photon_number_direct(synthetic), 1.0, 1e-15);

    for (double mu : find_matching_branches(0.5, 0.5, 15.0)) {
        const auto s = two_mode_coeffs_adaptive(0.5, mu);
        EXPECT_NEAR(mean_photon_number(s), mean_photon_number_direct(s), 1e-10);
    }
}

TEST(TwoModeCost, HalfSumAgrees) {
    for (double mu : find_matching_branches(1.5, 0.5, 15.0)) {
        const auto s = two_mode_coeffs_adaptive(1.5, mu);
        EXPECT_NEAR(two_mode_cost(s), two_mode_cost_half_sum(s), 1e-13);
    }
    EXPECT_EQ(two_mode_cost(vacuum_solution()), 2.0);
}

TEST(OptimizeTwoMode, FrontierProperties) {
    std::vector<double> grid;
    for (double l = 0.0; l <= 2.0 + 1e-12; l += 0.25) {
        grid.push_back(l);
    }
    const auto scan = optimize_two_mode(grid, 0.5, 12.0, 400, 4);
    ASSERT_FALSE(scan.frontier.empty());
    EXPECT_TRUE(scan.frontier.front().is_vacuum());
    EXPECT_EQ(scan.frontier.front().cost, 2.0);
    EXPECT_EQ(scan.frontier.front().mean_photons, 0.0);
    bool saw_first_zero = false;
    for (const auto &s : scan.solutions) {
        saw_first_zero = saw_first_zero || (s.lambda == 0.0 && std::abs(s.x - kJ1Zeros[0]) < 1e-8);
        EXPECT_LT(two_mode_recursion_residual(s), 1e-9);
        EXPECT_NEAR(normalization(s), 1.0, 1e-12);
    }
    EXPECT_TRUE(saw_first_zero);
    for (std::size_t i = 1; i < scan.frontier.size(); ++i) {
        EXPECT_LE(scan.frontier[i].cost, scan.frontier[i - 1].cost);
        EXPECT_GE(scan.frontier[i].mean_photons, scan.frontier[i - 1].mean_photons);
    }
    for (const auto &s : scan.frontier) {
        if (s.is_vacuum()) {
            continue;
        }
        const int dim = 2 * s.n_max + 1;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(oracle::tridiagonal(dim, 2.0, -1.0), Eigen::EigenvaluesOnly);
        EXPECT_GE(s.cost, dense.eigenvalues()(0) - 1e-12);
    }
}

TEST(OptimizeTwoMode, ThreadCountDoesNotChangeResult) {
    const std::vector<double> grid{0.0, 0.5, 1.0, 1.5, 2.0};
    const auto a = optimize_two_mode(grid, 0.5, 12.0, 400, 1);
    const auto b = optimize_two_mode(grid, 0.5, 12.0, 400, 3);
    ASSERT_EQ(a.solutions.size(), b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
        EXPECT_EQ(a.solutions[i].h, b.solutions[i].h);
        EXPECT_EQ(a.solutions[i].cost, b.solutions[i].cost);
    }
}

TEST(OptimizeTwoMode, Errors) {
    const std::vector<double> none{0.0};
    try {
        optimize_two_mode(none, 0.5, 3.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoRootsInRange);
    }
    const std::vector<double> negative{-1.0, 0.0};
    try {
        optimize_two_mode(negative, 0.5, 12.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
    EXPECT_THROW(optimize_two_mode(std::vector<double>{}, 0.5, 12.0), Error);
}
