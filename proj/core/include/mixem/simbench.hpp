#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "mixem/censored.hpp"
#include "mixem/problem.hpp"
#include "mixem/solve.hpp"

namespace mixem {

// Random streams -------------------------------------------------------------
//
// Every generated dataset comes from std::mt19937_64, whose output sequence is
// fixed by the C++ standard. Replication r of a run seeded with s uses the
// engine seeded with splitmix64(s ^ splitmix64(r + 1)), so any replication can
// be regenerated on its own. Uniforms use the top 53 bits:
// u = ((x >> 11) + 0.5) * 2^-53, which lies strictly inside (0, 1).

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);
double uniform_open01(std::mt19937_64& engine);

// Doubly censored samples ----------------------------------------------------

struct DoublyCensoredConfig {
  std::size_t n = 1000;
  /// Ranks of the lower and upper inspection times among 20 uniforms,
  /// 1 <= q1 < q2 <= 20.
  int q1 = 3;
  int q2 = 18;
  std::uint64_t seed = 0;
};

/// T ~ Exp(1) by inversion; L and U are the q1-th and q2-th order statistics
/// of 20 uniforms. Emits T if L < T <= U, (0, L] if T <= L, (U, inf] if T > U.
CensoredSample generate_doubly_censored(const DoublyCensoredConfig& config,
                                        std::uint64_t replication = 0);

// Normal location grid -------------------------------------------------------

struct NormalGridConfig {
  std::vector<double> data;
  double grid_lo = 10.0;
  double grid_hi = 33.94;
  std::size_t grid_count = 64;
  double sigma = 0.95;
};

/// Dense problem with f_ij the N(mu_j, sigma^2) density at y_i, mu_j evenly
/// spaced on [grid_lo, grid_hi].
MixtureProblem build_normal_grid_problem(const NormalGridConfig& config);

// Benchmark harness ----------------------------------------------------------

struct RunRecord {
  std::size_t replication;
  Algorithm algorithm;
  std::size_t iterations;
  double seconds;
  bool converged;
  double loglik;
};

struct AlgorithmSummary {
  Algorithm algorithm;
  std::size_t runs = 0;
  std::size_t capped_runs = 0;
  /// Over converged runs only; NaN when undefined (sd needs two runs).
  double mean_iterations = 0.0;
  double sd_iterations = 0.0;
  double mean_seconds = 0.0;
  double sd_seconds = 0.0;
};

struct BenchmarkSummary {
  std::size_t n = 0;
  std::optional<int> q1;
  std::optional<int> q2;
  std::vector<AlgorithmSummary> algorithms;
  std::vector<RunRecord> runs;

  const AlgorithmSummary& at(Algorithm algorithm) const;
};

using ProblemFactory = std::function<MixtureProblem(std::size_t replication)>;

/// Every algorithm starts from the uniform vector on the same dataset for a
/// given replication. `config.algorithm` is ignored.
BenchmarkSummary run_benchmark(const ProblemFactory& make_problem, std::size_t replications,
                               const std::vector<Algorithm>& algorithms,
                               const SolverConfig& config);

BenchmarkSummary run_benchmark(const DoublyCensoredConfig& generator, std::size_t replications,
                               const std::vector<Algorithm>& algorithms,
                               const SolverConfig& config);

/// Header: algorithm,n,q1,q2,mean_iters,sd_iters,mean_seconds,sd_seconds,capped_runs.
/// Undefined statistics and absent ranks are written as empty fields.
void write_summary_csv(std::ostream& out, const BenchmarkSummary& summary);

}  // namespace mixem
