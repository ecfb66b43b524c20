#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.h"
#include "phasekit/error.h"
#include "phasekit/pom.h"

using namespace phasekit;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

ReducedState uniform_on(const Spectrum &s) {
    return ReducedState::normalized(s, std::vector<double>(s.size(), 1.0));
}

}  // namespace

TEST(EVector, Values) {
    const auto zero = e_vector(Spectrum::naturals(0, 4), 0.0);
    EXPECT_TRUE(zero.amplitudes.isApprox(Eigen::VectorXcd::Ones(5)));

    const auto pi = e_vector(Spectrum::naturals(0, 2), kPi);
    EXPECT_NEAR(std::abs(pi.amplitudes(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pi.amplitudes(1) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pi.amplitudes(2) - 1.0), 0.0, 1e-15);

    const auto quarter = e_vector(Spectrum::integers(-1, 1), kPi / 2);
    EXPECT_NEAR(std::abs(quarter.amplitudes(0) + kI), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(quarter.amplitudes(1) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(quarter.amplitudes(2) - kI), 0.0, 1e-15);
}

TEST(EVector, UnitModulusAndNorm) {
    const auto s = Spectrum::integers(-7, 9);
    for (double phi : {0.1, 1.3, 4.4, -2.0}) {
        const auto e = e_vector(s, phi);
        for (Eigen::Index i = 0; i < e.amplitudes.size(); ++i) {
            EXPECT_NEAR(std::abs(e.amplitudes(i)), 1.0, 1e-15);
        }
        EXPECT_NEAR(e.amplitudes.squaredNorm(), static_cast<double>(s.size()), 1e-12);
    }
}

TEST(ConditionalDensity, SpecExamples) {
    const double r = 1.0 / std::sqrt(2.0);
    const ReducedState two(Spectrum::naturals(0, 1), {r, r});
    const ReducedState point(Spectrum::naturals(0, 3), {0.0, 1.0, 0.0, 0.0});
    const ReducedState gap(Spectrum::integers(-1, 1), {r, 0.0, r});
    for (double d = -4.0; d < 8.0; d += 0.41) {
        EXPECT_NEAR(conditional_density(two, d + 0.3, 0.3), (1.0 + std::cos(d)) / (2.0 * kPi), 1e-15);
        EXPECT_NEAR(conditional_density(point, d, 0.0), 1.0 / (2.0 * kPi), 1e-15);
        EXPECT_NEAR(conditional_density(gap, d, 0.0), (1.0 + std::cos(2.0 * d)) / (2.0 * kPi), 1e-15);
    }
}

TEST(ConditionalDensity, CovarianceAtRandomTriples) {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const auto w = oracle::random_unit_weights(gen, 9);
    const ReducedState st(Spectrum::integers(-4, 4), w);
    for (int i = 0; i < 100; ++i) {
        const double est = u(gen);
        const double tru = u(gen);
        const double shift = u(gen);
        // Differences are formed before the harmonic sum, so only the rounding
        // of (est + shift) - (tru + shift) can differ.
        EXPECT_NEAR(conditional_density(st, est, tru), conditional_density(st, est + shift, tru + shift), 1e-13);
    }
    EXPECT_EQ(conditional_density(st, 1.25, 0.5), conditional_density(st, 2.25, 1.5));
}

TEST(ConditionalDensity, NormalizedBySpectralQuadrature) {
    std::mt19937_64 gen(8);
    for (int size : {2, 5, 17, 64}) {
        const auto w = oracle::random_unit_weights(gen, static_cast<std::size_t>(size));
        const ReducedState st(Spectrum::naturals(0, size - 1), w);
        const int grid = 2 * size + 1;
        double total = 0.0;
        for (int j = 0; j < grid; ++j) {
            total += conditional_density(st, 2.0 * kPi * j / grid, 0.0);
        }
        EXPECT_NEAR(total * 2.0 * kPi / grid, 1.0, 1e-10);
    }
}

TEST(ConditionalDensity, RecordedPhasesDoNotChangeDensity) {
    const auto s = Spectrum::naturals(0, 3);
    const std::vector<double> w{0.5, 0.5, 0.5, 0.5};
    const ReducedState plain(s, w);
    const ReducedState phased(s, w, {std::polar(1.0, 0.3), std::polar(1.0, 2.0), Complex(-1.0, 0.0), kI});
    for (double d = 0.0; d < 6.3; d += 0.5) {
        EXPECT_EQ(conditional_density(plain, d, 0.0), conditional_density(phased, d, 0.0));
    }
}

TEST(ConditionalDensity, AllOnesXiMatchesOptimalForm) {
    const auto s = Spectrum::integers(-2, 3);
    std::mt19937_64 gen(4);
    const ReducedState st(s, oracle::random_unit_weights(gen, 6));
    const auto xi = XiMatrix::validated(s, HermitianMatrix::Ones(6, 6));
    for (double d = 0.0; d < 6.3; d += 0.7) {
        EXPECT_NEAR(conditional_density(st, xi, d, 0.0), conditional_density(st, d, 0.0), 1e-14);
    }
}

TEST(WeightAutocorrelation, DensityFromAutocorrelation) {
    std::mt19937_64 gen(9);
    const ReducedState st(Spectrum::naturals(0, 6), oracle::random_unit_weights(gen, 7));
    const auto a = weight_autocorrelation(st);
    EXPECT_NEAR(a[0], 1.0, 1e-15);
    for (double d = 0.0; d < 6.3; d += 0.3) {
        double p = a[0];
        for (std::size_t l = 1; l < a.size(); ++l) {
            p += 2.0 * a[l] * std::cos(static_cast<double>(l) * d);
        }
        EXPECT_NEAR(p / (2.0 * kPi), conditional_density(st, d, 0.0), 1e-14);
    }
}

TEST(DiscretePom, QEqualsTwo) {
    const auto pom = discrete_pom_zq(2);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(pom.vectors[0](0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pom.vectors[0](1) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pom.vectors[1](0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pom.vectors[1](1) + r), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(pom.phases[1], kPi);
}

TEST(DiscretePom, CompletenessAndOrthogonality) {
    EXPECT_LT(discrete_pom_zq(3).completeness_residual(), 1e-14);
    const auto q4 = discrete_pom_zq(4);
    EXPECT_LT(std::abs(q4.vectors[1].dot(q4.vectors[3])), 1e-15);
    for (int q = 2; q <= 64; ++q) {
        const auto pom = discrete_pom_zq(q);
        EXPECT_LT(pom.completeness_residual(), 1e-13) << q;
        for (std::size_t s = 0; s < pom.vectors.size(); ++s) {
            const auto p = pom.projector(s);
            EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-13);
        }
        for (std::size_t s = 1; s < pom.vectors.size(); ++s) {
            EXPECT_LT(std::abs(pom.vectors[0].dot(pom.vectors[s])), 1e-13);
        }
    }
    EXPECT_THROW(discrete_pom_zq(1), Error);
}

TEST(DiscretePom, SameAverageCostAsContinuous) {
    std::mt19937_64 gen(31);
    for (int q : {3, 5, 8, 13}) {
        const auto s = Spectrum::mod_q(q);
        const ReducedState st(s, oracle::random_unit_weights(gen, static_cast<std::size_t>(q)));
        for (const auto &model : {variance_cost(), likelihood_cost(q - 1), fidelity_cost(st, q - 1),
                                  CostModel::from_coeffs({0.3, 0.9, 0.2})}) {
            const auto xi = optimal_xi(model, s);
            const double continuous = average_cost_quadrature(model, st, xi, 8 * q + 8);
            EXPECT_NEAR(discrete_pom_average_cost(model, st), continuous, 1e-10) << "q=" << q;
            EXPECT_NEAR(continuous, min_cost(model, st), 1e-10);
        }
    }
    EXPECT_THROW(discrete_pom_average_cost(variance_cost(), uniform_on(Spectrum::naturals(0, 3))), Error);
}

TEST(PomCompleteness, SpecExamples) {
    EXPECT_LT(pom_completeness_residual(Spectrum::naturals(0, 5), 64), 1e-13);
    EXPECT_LT(pom_completeness_residual(Spectrum::integers(-3, 3), 32), 1e-13);
    try {
        pom_completeness_residual(Spectrum::naturals(0, 5), 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
    }
}

TEST(PomCompleteness, ExactAtMinimalGrid) {
    for (int size = 2; size <= 64; size += 7) {
        EXPECT_LT(pom_completeness_residual(Spectrum::naturals(0, size - 1), 2 * size), 1e-12) << size;
    }
}

TEST(TwoModeOrthogonality, DirichletKernel) {
    EXPECT_NEAR(orthogonality_check_two_mode(10, 0.4, 0.4), 21.0, 1e-12);
    EXPECT_NEAR(orthogonality_check_two_mode(10, 2.0 * kPi / 21.0, 0.0), 0.0, 1e-12);
    EXPECT_NEAR(orthogonality_check_two_mode(10, kPi, 0.0), 1.0, 1e-12);
    EXPECT_THROW(orthogonality_check_two_mode(0, 0.0, 0.0), Error);
}

TEST(TwoModeOrthogonality, ApproachesDiracComb) {
    // Peak grows like 2 dmax + 1 while the mass over a period stays 1, and
    // the value away from zero stays bounded.
    for (int dmax : {1, 5, 20, 80}) {
        EXPECT_NEAR(orthogonality_check_two_mode(dmax, 2.0 * kPi, 0.0), 2.0 * dmax + 1.0, 1e-9);
        EXPECT_NEAR(dirichlet_kernel_mass(dmax, 2 * dmax + 1), 1.0, 1e-12);
        EXPECT_LE(std::abs(orthogonality_check_two_mode(dmax, 1.0, 0.0)), 1.0 / std::sin(0.5) + 1e-12);
    }
}
