#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "mixem/censored.hpp"
#include "mixem/error.hpp"
#include "mixem/kernels.hpp"
#include "mixem/steps.hpp"
#include "oracles.hpp"

namespace mixem {
namespace {

using Sizes = std::vector<std::size_t>;

CensoredSample sample(std::vector<Observation> obs) { return CensoredSample(std::move(obs)); }

TEST(CensoredSample, RejectsMalformedIntervals) {
  EXPECT_THROW(sample({}), InputError);
  EXPECT_THROW(sample({Observation::interval(3, 2)}), InputError);
  EXPECT_THROW(sample({Observation::interval(-1, 2)}), InputError);
  EXPECT_THROW(sample({Observation::right_censored(NAN)}), InputError);
  EXPECT_THROW(sample({Observation::interval(1, std::numeric_limits<double>::infinity())}),
               InputError);
}

TEST(BuildCensoredProblem, DisjointIntervals) {
  const auto built =
      build_censored_problem(sample({Observation::interval(0, 2), Observation::right_censored(3)}));
  EXPECT_EQ(built.grid.finite_times, (std::vector<double>{2, 3}));
  EXPECT_EQ(built.matrix.m(), 3u);
  EXPECT_EQ(std::vector<std::size_t>(built.matrix.firsts().begin(), built.matrix.firsts().end()),
            (Sizes{0, 2}));
  EXPECT_EQ(std::vector<std::size_t>(built.matrix.lasts().begin(), built.matrix.lasts().end()),
            (Sizes{0, 2}));
}

TEST(BuildCensoredProblem, SingleExact) {
  const auto built = build_censored_problem(sample({Observation::exact(1.0)}));
  EXPECT_EQ(built.grid.finite_times, (std::vector<double>{1.0}));
  EXPECT_EQ(built.matrix.m(), 2u);
  EXPECT_EQ(built.matrix.first(0), 0u);
  EXPECT_EQ(built.matrix.last(0), 0u);
}

TEST(BuildCensoredProblem, RepeatedInterval) {
  const auto built =
      build_censored_problem(sample({Observation::interval(0, 5), Observation::interval(0, 5)}));
  EXPECT_EQ(built.matrix.m(), 2u);
  EXPECT_EQ(built.matrix.first(1), 0u);
  EXPECT_EQ(built.matrix.last(1), 0u);
}

TEST(BuildCensoredProblem, ExactTimeSharesIntervalEndpoint) {
  const auto built =
      build_censored_problem(sample({Observation::interval(1, 3), Observation::exact(3)}));
  EXPECT_EQ(built.grid.finite_times, (std::vector<double>{1, 3}));
  EXPECT_EQ(built.matrix.first(0), 1u);
  EXPECT_EQ(built.matrix.first(1), 1u);
}

TEST(BuildCensoredProblem, EmptyRowIsRejected) {
  EXPECT_THROW(build_censored_problem(sample({Observation::exact(0.0)})), InputError);
}

TEST(BuildCensoredProblem, MatchesMembershipDefinition) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = testing::random_censored_sample(rng, 1 + rng() % 60);
    const auto built = build_censored_problem(s);
    const auto& z = built.grid.finite_times;
    for (std::size_t k = 1; k < z.size(); ++k) ASSERT_LT(z[k - 1], z[k]);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& o = s[i];
      for (std::size_t j = 0; j < built.matrix.m(); ++j) {
        bool inside;
        if (j == z.size()) {
          inside = o.is_right_censored();
        } else if (o.is_exact()) {
          inside = z[j] == o.left;
        } else {
          inside = z[j] > o.left && (o.is_right_censored() || z[j] <= *o.right);
        }
        ASSERT_EQ(built.matrix.covers(i, j), inside) << trial << " " << i << " " << j;
      }
    }
  }
}

TEST(SparseEta, Examples) {
  const SparseIntervalMatrix matrix(3, {0, 1}, {1, 2});
  const auto eta = sparse_eta(matrix, ProbabilityVector({0.2, 0.3, 0.5}));
  EXPECT_NEAR(eta.eta[0], 0.5, 1e-15);
  EXPECT_NEAR(eta.eta[1], 0.8, 1e-15);
  const SparseIntervalMatrix full(4, {0, 0}, {3, 3});
  const auto ones = sparse_eta(full, ProbabilityVector({0.1, 0.2, 0.3, 0.4}));
  EXPECT_NEAR(ones.eta[0], 1.0, 1e-15);
  EXPECT_NEAR(ones.eta[1], 1.0, 1e-15);
}

TEST(SparseGradient, Examples) {
  const SparseIntervalMatrix matrix(3, {0, 1}, {1, 2});
  const auto d = sparse_gradient(matrix, MixtureDensities{{0.5, 0.8}});
  EXPECT_NEAR(d.d[0], 2.0, 1e-15);
  EXPECT_NEAR(d.d[1], 3.25, 1e-15);
  EXPECT_NEAR(d.d[2], 1.25, 1e-15);
  const SparseIntervalMatrix full(5, {0}, {4});
  EXPECT_EQ(sparse_gradient(full, MixtureDensities{{1.0}}).d, std::vector<double>(5, 1.0));
  EXPECT_THROW(sparse_gradient(matrix, MixtureDensities{{0.5, 0.0}}), DegenerateError);
}

TEST(SparseKernels, MatchDenseOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto built = build_censored_problem(testing::random_censored_sample(rng, 1 + rng() % 80));
    const MixtureProblem problem(built.matrix);
    const auto f = testing::to_table(problem);
    const auto p = testing::random_simplex(rng, problem.m());
    const auto pv = ProbabilityVector(p);
    const auto eta = sparse_eta(built.matrix, pv);
    const auto ref_eta = testing::brute_eta(f, p);
    for (std::size_t i = 0; i < f.size(); ++i) ASSERT_NEAR(eta.eta[i], ref_eta[i], 1e-12);
    const auto d = sparse_gradient(built.matrix, eta);
    const auto ref_d = testing::brute_gradient(f, p);
    for (std::size_t j = 0; j < p.size(); ++j) {
      ASSERT_NEAR(d.d[j], ref_d[j], 1e-12 * std::max(1.0, ref_d[j]));
    }
    EXPECT_NEAR(log_likelihood(problem, pv), testing::brute_loglik(f, p), 1e-9);
  }
}

TEST(SparseNnePass, GridExample) {
  const auto built =
      build_censored_problem(sample({Observation::interval(0, 2), Observation::right_censored(3)}));
  const auto p = ProbabilityVector::uniform(3);
  const auto next = sparse_nne_pass(built.matrix, p);
  EXPECT_EQ(next, nne_pass(MixtureProblem(built.matrix).to_dense(), p));
  EXPECT_EQ(next[1], 0.0);
  const auto single = ProbabilityVector::unit(3, 2);
  EXPECT_EQ(sparse_nne_pass(SparseIntervalMatrix(3, {0}, {2}), single), single);
}

using Step = std::function<ProbabilityVector(const MixtureProblem&, const ProbabilityVector&)>;

ProbabilityVector nne_plus(const MixtureProblem& f, const ProbabilityVector& p) {
  return nne_pass(f, vdm_step(f, p));
}

TEST(DenseSparseAgreement, HundredIterationsEveryAlgorithm) {
  const std::vector<std::pair<const char*, Step>> steps = {
      {"em", em_step},
      {"squeeze1",
       [](const MixtureProblem& f, const ProbabilityVector& p) {
         return squeeze1_step(f, p, squeeze_overlap(f));
       }},
      {"squeeze2",
       [](const MixtureProblem& f, const ProbabilityVector& p) {
         const auto g = squeeze_overlap(f);
         return squeeze2_step(f, p, g, default_beta(f, g));
       }},
      {"nne+", nne_plus},
      {"vem", vem_step},
      {"cocktail", cocktail_iteration},
  };
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto built = build_censored_problem(testing::random_censored_sample(rng, 1 + rng() % 200));
    const MixtureProblem sparse(built.matrix);
    const auto dense = sparse.to_dense();
    for (const auto& [name, step] : steps) {
      auto a = ProbabilityVector::uniform(sparse.m());
      auto b = a;
      for (int it = 0; it < 100; ++it) {
        a = step(sparse, a);
        b = step(dense, b);
        for (std::size_t j = 0; j < a.size(); ++j) {
          ASSERT_NEAR(a[j], b[j], 1e-12) << name << " trial " << trial << " it " << it;
        }
      }
    }
  }
}

TEST(Npmle, DisjointIntervals) {
  const auto result =
      npmle(sample({Observation::interval(0, 2), Observation::right_censored(3)}), SolverConfig{});
  EXPECT_TRUE(result.report.converged);
  EXPECT_NEAR(result.estimate.masses[0], 0.5, 1e-12);
  EXPECT_NEAR(result.estimate.masses[1], 0.0, 1e-12);
  EXPECT_NEAR(result.estimate.mass_beyond_last_time(), 0.5, 1e-12);
  EXPECT_NEAR(result.estimate.cdf[0], 0.5, 1e-12);
  EXPECT_NEAR(result.estimate.cdf[1], 0.5, 1e-12);
}

TEST(Npmle, SingleExactObservation) {
  const auto result = npmle(sample({Observation::exact(1.0)}), SolverConfig{});
  EXPECT_EQ(result.estimate.masses[0], 1.0);
  EXPECT_EQ(result.estimate.mass_beyond_last_time(), 0.0);
}

TEST(Npmle, UncensoredIsEmpirical) {
  std::vector<Observation> obs;
  for (double t : {4.5, 0.25, 3.0, 9.0, 1.75}) obs.push_back(Observation::exact(t));
  for (Algorithm a : all_algorithms()) {
    SolverConfig config;
    config.algorithm = a;
    config.epsilon = 1e-12;
    const auto result = npmle(sample(obs), config);
    ASSERT_EQ(result.estimate.masses.size(), 6u);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(result.estimate.masses[j], 0.2, 1e-9);
    EXPECT_NEAR(result.estimate.mass_beyond_last_time(), 0.0, 1e-9);
    EXPECT_NEAR(result.estimate.cdf.back(), 1.0, 1e-9);
  }
}

TEST(Npmle, RightCensoredOnly) {
  const auto result = npmle(
      sample({Observation::right_censored(1), Observation::right_censored(2.5),
              Observation::right_censored(0.5)}),
      SolverConfig{});
  EXPECT_NEAR(result.estimate.mass_beyond_last_time(), 1.0, 1e-9);
}

TEST(Npmle, CdfIsNondecreasingAndPathsAgree) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = testing::random_censored_sample(rng, 50 + rng() % 100);
    const auto sparse = npmle(s, SolverConfig{}, KernelPath::sparse);
    const auto dense = npmle(s, SolverConfig{}, KernelPath::dense);
    const auto& cdf = sparse.estimate.cdf;
    for (std::size_t k = 1; k < cdf.size(); ++k) EXPECT_GE(cdf[k], cdf[k - 1]);
    EXPECT_GE(cdf.front(), 0.0);
    EXPECT_LE(cdf.back(), 1.0 + 1e-12);
    EXPECT_EQ(sparse.report.iterations, dense.report.iterations);
    EXPECT_NEAR(sparse.report.loglik, dense.report.loglik, 1e-9);
  }
}

}  // namespace
}  // namespace mixem
