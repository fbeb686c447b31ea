#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixem/probability.hpp"
#include "mixem/problem.hpp"

namespace mixem {

enum class Algorithm { em, squeeze1, squeeze2, nne_plus, vem, cocktail };

/// Command-line spelling: em, squeeze1, squeeze2, nne+, vem, cocktail.
std::string_view to_string(Algorithm algorithm);
/// Inverse of to_string; also accepts "nne_plus". Throws InputError.
Algorithm parse_algorithm(std::string_view name);
const std::vector<Algorithm>& all_algorithms();

struct SolverConfig {
  Algorithm algorithm = Algorithm::cocktail;
  double epsilon = 1e-6;
  std::size_t max_iterations = 100000;
  bool trace = false;
};

struct TracePoint {
  double loglik;
  double gap;
};

struct SolveReport {
  ProbabilityVector p_hat;
  double loglik;
  double gap;
  std::size_t iterations;
  bool converged;
  std::vector<TracePoint> trace;
  double wall_time;
};

/// Runs outer iterations of the configured algorithm from p0 (uniform when
/// absent) until convergence_gap <= epsilon or the iteration cap.
///
/// The gap is checked before the first iteration and after every outer
/// iteration. Hitting the cap is reported through `converged == false`, not
/// as an error. One outer iteration is:
///   em, squeeze1, squeeze2, vem: one step
///   nne_plus: VDM step + nearest-neighbour pass
///   cocktail: VDM step + nearest-neighbour pass + EM step
SolveReport solve(const MixtureProblem& problem, const SolverConfig& config,
                  const std::optional<ProbabilityVector>& p0 = std::nullopt);

}  // namespace mixem
