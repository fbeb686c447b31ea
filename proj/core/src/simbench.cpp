#include "mixem/simbench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "mixem/error.hpp"

namespace mixem {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 1)));
}

double uniform_open01(std::mt19937_64& engine) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine() >> 11) + 0.5) * kScale;
}

CensoredSample generate_doubly_censored(const DoublyCensoredConfig& config,
                                        std::uint64_t replication) {
  if (config.n == 0) throw InputError("sample size must be positive");
  if (config.q1 < 1 || config.q2 > 20 || config.q1 >= config.q2) {
    throw InputError("ranks must satisfy 1 <= q1 < q2 <= 20");
  }
  auto engine = make_stream(config.seed, replication);
  std::vector<Observation> out;
  out.reserve(config.n);
  std::array<double, 20> inspections{};
  for (std::size_t i = 0; i < config.n; ++i) {
    const double t = -std::log(uniform_open01(engine));
    for (double& u : inspections) u = uniform_open01(engine);
    std::sort(inspections.begin(), inspections.end());
    const double lower = inspections[static_cast<std::size_t>(config.q1 - 1)];
    const double upper = inspections[static_cast<std::size_t>(config.q2 - 1)];
    if (t <= lower) {
      out.push_back(Observation::interval(0.0, lower));
    } else if (t <= upper) {
      out.push_back(Observation::exact(t));
    } else {
      out.push_back(Observation::right_censored(upper));
    }
  }
  return CensoredSample(std::move(out));
}

MixtureProblem build_normal_grid_problem(const NormalGridConfig& config) {
  if (config.grid_count < 2) throw InputError("normal grid needs at least 2 points");
  if (!(config.sigma > 0.0)) throw InputError("sigma must be positive");
  if (config.data.empty()) throw InputError("normal grid problem needs data");
  if (!(config.grid_hi > config.grid_lo)) throw InputError("grid_hi must exceed grid_lo");
  const std::size_t n = config.data.size();
  const std::size_t m = config.grid_count;
  const double step = (config.grid_hi - config.grid_lo) / static_cast<double>(m - 1);
  const double norm = 1.0 / (config.sigma * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> values(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double mu = config.grid_lo + static_cast<double>(j) * step;
      const double z = (config.data[i] - mu) / config.sigma;
      values[i * m + j] = norm * std::exp(-0.5 * z * z);
    }
  }
  return MixtureProblem(DenseDensities(n, m, std::move(values)));
}

const AlgorithmSummary& BenchmarkSummary::at(Algorithm algorithm) const {
  for (const auto& s : algorithms) {
    if (s.algorithm == algorithm) return s;
  }
  throw InputError("algorithm '" + std::string(to_string(algorithm)) + "' was not benchmarked");
}

namespace {

struct MeanSd {
  double mean;
  double sd;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  if (xs.empty()) return {kNaN, kNaN};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, kNaN};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

BenchmarkSummary run_benchmark(const ProblemFactory& make_problem, std::size_t replications,
                               const std::vector<Algorithm>& algorithms,
                               const SolverConfig& config) {
  if (replications < 1) throw InputError("benchmark needs at least one replication");
  if (algorithms.empty()) throw InputError("benchmark needs at least one algorithm");
  BenchmarkSummary summary;
  for (std::size_t r = 0; r < replications; ++r) {
    const MixtureProblem problem = make_problem(r);
    summary.n = problem.n();
    for (Algorithm a : algorithms) {
      SolverConfig run_config = config;
      run_config.algorithm = a;
      run_config.trace = false;
      const SolveReport report = solve(problem, run_config);
      summary.runs.push_back(
          {r, a, report.iterations, report.wall_time, report.converged, report.loglik});
    }
  }
  for (Algorithm a : algorithms) {
    AlgorithmSummary s;
    s.algorithm = a;
    std::vector<double> iterations;
    std::vector<double> seconds;
    for (const RunRecord& run : summary.runs) {
      if (run.algorithm != a) continue;
      ++s.runs;
      if (!run.converged) {
        ++s.capped_runs;
        continue;
      }
      iterations.push_back(static_cast<double>(run.iterations));
      seconds.push_back(run.seconds);
    }
    const MeanSd it = mean_sd(iterations);
    const MeanSd sec = mean_sd(seconds);
    s.mean_iterations = it.mean;
    s.sd_iterations = it.sd;
    s.mean_seconds = sec.mean;
    s.sd_seconds = sec.sd;
    summary.algorithms.push_back(s);
  }
  return summary;
}

BenchmarkSummary run_benchmark(const DoublyCensoredConfig& generator, std::size_t replications,
                               const std::vector<Algorithm>& algorithms,
                               const SolverConfig& config) {
  auto factory = [&generator](std::size_t r) {
    return MixtureProblem(build_censored_problem(generate_doubly_censored(generator, r)).matrix);
  };
  BenchmarkSummary summary = run_benchmark(factory, replications, algorithms, config);
  summary.n = generator.n;
  summary.q1 = generator.q1;
  summary.q2 = generator.q2;
  return summary;
}

namespace {

void write_number(std::ostream& out, double x) {
  if (std::isnan(x)) return;
  out << x;
}

}  // namespace

void write_summary_csv(std::ostream& out, const BenchmarkSummary& summary) {
  const auto old_precision = out.precision(10);
  out << "algorithm,n,q1,q2,mean_iters,sd_iters,mean_seconds,sd_seconds,capped_runs\n";
  for (const AlgorithmSummary& s : summary.algorithms) {
    out << to_string(s.algorithm) << ',' << summary.n << ',';
    if (summary.q1) out << *summary.q1;
    out << ',';
    if (summary.q2) out << *summary.q2;
    out << ',';
    write_number(out, s.mean_iterations);
    out << ',';
    write_number(out, s.sd_iterations);
    out << ',';
    write_number(out, s.mean_seconds);
    out << ',';
    write_number(out, s.sd_seconds);
    out << ',' << s.capped_runs << '\n';
  }
  out.precision(old_precision);
}

}  // namespace mixem
