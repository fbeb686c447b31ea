#include <gtest/gtest.h>

#include <random>

#include "mixem/error.hpp"
#include "mixem/waterfill.hpp"
#include "oracles.hpp"

namespace mixem {
namespace {

TEST(Waterfill, ZeroBetaIsNormalization) {
  const auto r = waterfill(std::vector<double>{2, 1}, std::vector<double>{0, 0}, 1.0);
  EXPECT_NEAR(r.delta, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.p[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.p[1], 1.0 / 3.0, 1e-15);
}

TEST(Waterfill, BothComponentsActive) {
  const auto r = waterfill(std::vector<double>{2, 1}, std::vector<double>{0.5, 0}, 1.0);
  EXPECT_DOUBLE_EQ(r.delta, 0.5);
  EXPECT_DOUBLE_EQ(r.p[0], 0.5);
  EXPECT_DOUBLE_EQ(r.p[1], 0.5);
}

TEST(Waterfill, ClampsComponentAtZero) {
  const auto r = waterfill(std::vector<double>{10, 1}, std::vector<double>{0, 5}, 1.0);
  EXPECT_DOUBLE_EQ(r.delta, 0.1);
  EXPECT_DOUBLE_EQ(r.p[0], 1.0);
  EXPECT_EQ(r.p[1], 0.0);
}

TEST(Waterfill, ZeroWeightStaysAtZero) {
  const auto r = waterfill(std::vector<double>{0, 3}, std::vector<double>{0.7, 0.2}, 2.0);
  EXPECT_EQ(r.p[0], 0.0);
  EXPECT_NEAR(r.p[1], 2.0, 1e-15);
}

TEST(Waterfill, RejectsDegenerateInput) {
  EXPECT_THROW(waterfill(std::vector<double>{0, 0}, std::vector<double>{0, 0}, 1.0), InputError);
  EXPECT_THROW(waterfill(std::vector<double>{1}, std::vector<double>{0, 0}, 1.0), InputError);
  EXPECT_THROW(waterfill(std::vector<double>{1}, std::vector<double>{0}, 0.0), InputError);
  EXPECT_THROW(waterfill(std::vector<double>{1}, std::vector<double>{-1}, 1.0), InputError);
}

TEST(Waterfill, MatchesBisectionOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = 1 + rng() % 50;
    std::vector<double> s(m);
    std::vector<double> beta(m);
    for (std::size_t j = 0; j < m; ++j) {
      s[j] = unit(rng) < 0.1 ? 0.0 : 5.0 * unit(rng);
      beta[j] = unit(rng) < 0.3 ? 0.0 : 3.0 * unit(rng);
    }
    s[rng() % m] = 0.5 + unit(rng);
    const double total = 0.1 + 2.0 * unit(rng);
    const auto r = waterfill(s, beta, total);
    const double oracle = testing::bisect_waterfill_level(s, beta, total);
    ASSERT_NEAR(r.delta, oracle, 1e-10 * std::max(1.0, oracle)) << "trial " << trial;
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_GE(r.p[j], 0.0);
      sum += r.p[j];
      // KKT: active components sit on the common level, inactive ones below it.
      if (r.p[j] > 0.0) EXPECT_NEAR(r.p[j], r.delta * s[j] - beta[j], 1e-12 * (1 + beta[j]));
      if (s[j] == 0.0) EXPECT_EQ(r.p[j], 0.0);
    }
    EXPECT_NEAR(sum, total, 1e-12 * (1 + total));
  }
}

}  // namespace
}  // namespace mixem
