#include "mixem/solve.hpp"

#include <chrono>
#include <string>

#include "engine.hpp"
#include "mixem/error.hpp"
#include "mixem/steps.hpp"
#include "storage_ops.hpp"

namespace mixem {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::em: return "em";
    case Algorithm::squeeze1: return "squeeze1";
    case Algorithm::squeeze2: return "squeeze2";
    case Algorithm::nne_plus: return "nne+";
    case Algorithm::vem: return "vem";
    case Algorithm::cocktail: return "cocktail";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : all_algorithms()) {
    if (name == to_string(a)) return a;
  }
  if (name == "nne_plus") return Algorithm::nne_plus;
  throw InputError("unknown algorithm '" + std::string(name) +
                   "' (expected em, squeeze1, squeeze2, nne+, vem or cocktail)");
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> all = {Algorithm::em,       Algorithm::squeeze1,
                                             Algorithm::squeeze2, Algorithm::nne_plus,
                                             Algorithm::vem,      Algorithm::cocktail};
  return all;
}

namespace {

template <class Storage>
SolveReport run(const Storage& f, const SolverConfig& config, std::vector<double> x) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  detail::Engine engine(f);
  std::vector<double> g;
  std::vector<double> beta;
  if (config.algorithm == Algorithm::squeeze1 || config.algorithm == Algorithm::squeeze2) {
    g.resize(f.n());
    detail::row_minimum(f, g);
    if (config.algorithm == Algorithm::squeeze2) beta = detail::default_beta(f, g);
  }

  SolveReport report{ProbabilityVector::uniform(f.m()), 0.0, 0.0, 0, false, {}, 0.0};
  double gap = engine.gap(x);
  double loglik = engine.log_likelihood_at_eta();
  std::size_t iterations = 0;
  while (gap > config.epsilon && iterations < config.max_iterations) {
    switch (config.algorithm) {
      case Algorithm::em: engine.em(x); break;
      case Algorithm::squeeze1: engine.squeeze1(x, g); break;
      case Algorithm::squeeze2: engine.squeeze2(x, g, beta); break;
      case Algorithm::vem: engine.vem(x); break;
      case Algorithm::nne_plus:
        engine.vdm(x);
        engine.nne(x);
        break;
      case Algorithm::cocktail:
        engine.vdm(x);
        engine.nne(x);
        engine.em(x);
        break;
    }
    // Same final normalization a ProbabilityVector applies, so the iterates
    // match composing the public step functions.
    detail::normalize_in_place(x);
    ++iterations;
    gap = engine.gap(x);
    loglik = engine.log_likelihood_at_eta();
    if (config.trace) report.trace.push_back({loglik, gap});
  }

  report.p_hat = ProbabilityVector(std::move(x));
  report.loglik = loglik;
  report.gap = gap;
  report.iterations = iterations;
  report.converged = gap <= config.epsilon;
  report.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace

SolveReport solve(const MixtureProblem& problem, const SolverConfig& config,
                  const std::optional<ProbabilityVector>& p0) {
  if (!(config.epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (config.max_iterations < 1) throw InputError("iteration cap must be at least 1");
  std::vector<double> x =
      p0 ? p0->vector() : ProbabilityVector::uniform(problem.m()).vector();
  if (x.size() != problem.m()) throw InputError("starting vector length differs from m");
  return std::visit([&](const auto& f) { return run(f, config, std::move(x)); },
                    problem.storage());
}

}  // namespace mixem
