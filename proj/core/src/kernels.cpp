#include "mixem/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "engine.hpp"
#include "mixem/error.hpp"
#include "storage_ops.hpp"

namespace mixem {

namespace {

void check_dimensions(const MixtureProblem& problem, const ProbabilityVector& p) {
  if (p.size() != problem.m()) {
    throw InputError("problem has " + std::to_string(problem.m()) +
                     " components but p has " + std::to_string(p.size()));
  }
}

}  // namespace

MixtureDensities mixture_densities(const MixtureProblem& problem, const ProbabilityVector& p) {
  check_dimensions(problem, p);
  MixtureDensities out{std::vector<double>(problem.n())};
  std::visit([&](const auto& f) { detail::compute_eta(f, p.values(), out.eta); },
             problem.storage());
  return out;
}

double log_likelihood(const MixtureProblem& problem, const ProbabilityVector& p) {
  const auto densities = mixture_densities(problem, p);
  double l = 0.0;
  for (double e : densities.eta) {
    if (!(e > 0.0)) return -std::numeric_limits<double>::infinity();
    l += std::log(e);
  }
  return l;
}

SimplexGradient simplex_gradient(const MixtureProblem& problem, const ProbabilityVector& p) {
  check_dimensions(problem, p);
  return std::visit(
      [&](const auto& f) {
        detail::Engine engine(f);
        engine.refresh_eta(p.values());
        engine.refresh_gradient();
        const auto d = engine.gradient();
        return SimplexGradient{std::vector<double>(d.begin(), d.end())};
      },
      problem.storage());
}

double convergence_gap(const MixtureProblem& problem, const ProbabilityVector& p) {
  check_dimensions(problem, p);
  return std::visit(
      [&](const auto& f) {
        detail::Engine engine(f);
        return engine.gap(p.values());
      },
      problem.storage());
}

}  // namespace mixem
