#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "phasekit/rng.h"

using namespace phasekit;

TEST(SplitMix, KnownOutputs) {
    // Reference stream of the canonical SplitMix64 seeded with 0: the state
    // advances by the golden gamma and each draw is the finalizer of it.
    std::uint64_t state = 0;
    const std::uint64_t expected[] = {0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL, 0x06c45d188009454fULL};
    for (auto e : expected) {
        state += 0x9e3779b97f4a7c15ULL;
        EXPECT_EQ(splitmix64_mix(state), e);
    }
}

TEST(CounterRng, CounterModeIsPositionIndependent) {
    CounterRng a(42);
    std::vector<std::uint64_t> seq;
    for (int i = 0; i < 100; ++i) {
        seq.push_back(a.next());
    }
    const CounterRng b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(b.at(static_cast<std::uint64_t>(i)), seq[static_cast<std::size_t>(i)]);
    }
    CounterRng c(42, 50);
    EXPECT_EQ(c.next(), seq[50]);
    c.seek(7);
    EXPECT_EQ(c.next(), seq[7]);
    EXPECT_EQ(c.counter(), 8u);
}

TEST(CounterRng, SeedsAndSplitsDiffer) {
    const CounterRng a(1);
    const CounterRng b(2);
    const auto s0 = a.split(0);
    const auto s1 = a.split(1);
    std::set<std::uint64_t> firsts{a.at(0), b.at(0), s0.at(0), s1.at(0)};
    EXPECT_EQ(firsts.size(), 4u);
}

TEST(CounterRng, UniformRangeAndMoments) {
    const CounterRng r(123);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform_at(static_cast<std::uint64_t>(i));
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(sum2 / n, 1.0 / 3.0, 0.005);
}
