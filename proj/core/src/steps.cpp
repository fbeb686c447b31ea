#include "mixem/steps.hpp"

#include <cmath>
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

void check_squeeze(const MixtureProblem& problem, const SqueezeVector& g) {
  if (g.g.size() != problem.n()) throw InputError("squeeze vector length differs from n");
  SqueezeVector upper = squeeze_overlap(problem);
  for (std::size_t i = 0; i < problem.n(); ++i) {
    if (!(g.g[i] >= 0.0) || g.g[i] > upper.g[i]) {
      throw InputError("squeeze amount for row " + std::to_string(i) +
                       " is outside [0, min_j f_ij]");
    }
  }
}

void check_beta(const MixtureProblem& problem, const SqueezeVector& g, const BetaVector& beta) {
  if (beta.beta.size() != problem.m()) throw InputError("beta length differs from m");
  for (double b : beta.beta) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw InputError("beta entries must be >= 0");
  }
  // g_i - sum_j (f_ij - g_i) beta_j >= 0, up to rounding in the sum.
  for (std::size_t i = 0; i < problem.n(); ++i) {
    double load = 0.0;
    for (std::size_t j = 0; j < problem.m(); ++j) {
      load += (problem.density(i, j) - g.g[i]) * beta.beta[j];
    }
    if (g.g[i] - load < -1e-12 * std::max(1.0, g.g[i])) {
      throw InputError("beta violates the squeeze feasibility condition at row " +
                       std::to_string(i));
    }
  }
}

template <class Step>
ProbabilityVector run_step(const MixtureProblem& problem, const ProbabilityVector& p, Step step) {
  check_dimensions(problem, p);
  std::vector<double> x = p.vector();
  std::visit(
      [&](const auto& f) {
        detail::Engine engine(f);
        step(engine, x);
      },
      problem.storage());
  return ProbabilityVector(std::move(x));
}

}  // namespace

ProbabilityVector em_step(const MixtureProblem& problem, const ProbabilityVector& p) {
  return run_step(problem, p, [](auto& engine, auto& x) { engine.em(x); });
}

SqueezeVector squeeze_overlap(const MixtureProblem& problem) {
  SqueezeVector g{std::vector<double>(problem.n())};
  std::visit([&](const auto& f) { detail::row_minimum(f, g.g); }, problem.storage());
  return g;
}

ProbabilityVector squeeze1_step(const MixtureProblem& problem, const ProbabilityVector& p,
                                const SqueezeVector& g) {
  check_squeeze(problem, g);
  return run_step(problem, p, [&](auto& engine, auto& x) { engine.squeeze1(x, g.g); });
}

BetaVector default_beta(const MixtureProblem& problem, const SqueezeVector& g) {
  check_squeeze(problem, g);
  BetaVector out;
  out.beta = std::visit([&](const auto& f) { return detail::default_beta(f, g.g); },
                        problem.storage());
  for (double b : out.beta) out.beta_plus += b;
  return out;
}

ProbabilityVector squeeze2_step(const MixtureProblem& problem, const ProbabilityVector& p,
                                const SqueezeVector& g, const BetaVector& beta) {
  check_squeeze(problem, g);
  check_beta(problem, g, beta);
  return run_step(problem, p,
                  [&](auto& engine, auto& x) { engine.squeeze2(x, g.g, beta.beta); });
}

ProbabilityVector nne_pass(const MixtureProblem& problem, const ProbabilityVector& p) {
  return run_step(problem, p, [](auto& engine, auto& x) { engine.nne(x); });
}

ProbabilityVector sparse_nne_pass(const SparseIntervalMatrix& matrix, const ProbabilityVector& p) {
  if (p.size() != matrix.m()) throw InputError("sparse_nne_pass: dimension mismatch");
  std::vector<double> x = p.vector();
  detail::Engine engine(matrix);
  engine.nne(x);
  return ProbabilityVector(std::move(x));
}

ProbabilityVector vdm_step(const MixtureProblem& problem, const ProbabilityVector& p) {
  return run_step(problem, p, [](auto& engine, auto& x) { engine.vdm(x); });
}

ProbabilityVector vem_step(const MixtureProblem& problem, const ProbabilityVector& p) {
  return run_step(problem, p, [](auto& engine, auto& x) { engine.vem(x); });
}

ProbabilityVector cocktail_iteration(const MixtureProblem& problem, const ProbabilityVector& p) {
  return run_step(problem, p, [](auto& engine, auto& x) {
    engine.vdm(x);
    engine.nne(x);
    engine.em(x);
  });
}

}  // namespace mixem
