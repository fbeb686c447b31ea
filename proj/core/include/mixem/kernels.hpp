#pragma once

#include "mixem/densities.hpp"
#include "mixem/probability.hpp"
#include "mixem/problem.hpp"

namespace mixem {

/// Smallest mixture density a solve tolerates before reporting degeneracy.
inline constexpr double kEtaFloor = 1e-300;

/// sum_i log(eta_i); -infinity if some eta_i is zero.
double log_likelihood(const MixtureProblem& problem, const ProbabilityVector& p);

/// eta_i = sum_k f_ik p_k, compensated sum in ascending k.
MixtureDensities mixture_densities(const MixtureProblem& problem, const ProbabilityVector& p);

SimplexGradient simplex_gradient(const MixtureProblem& problem, const ProbabilityVector& p);

/// max_j d_j - n. Nonnegative on the simplex, zero exactly at the MLE; a value
/// <= eps bounds the log-likelihood shortfall from the maximum by eps.
double convergence_gap(const MixtureProblem& problem, const ProbabilityVector& p);

}  // namespace mixem
