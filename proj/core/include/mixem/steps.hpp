#pragma once

#include <vector>

#include "mixem/interval_matrix.hpp"
#include "mixem/probability.hpp"
#include "mixem/problem.hpp"

namespace mixem {

/// Per-observation overlap g_i squeezed out of every component,
/// 0 <= g_i <= min_j f_ij.
struct SqueezeVector {
  std::vector<double> g;
};

/// Mass offsets beta_j >= 0 with g_i - sum_j (f_ij - g_i) beta_j >= 0.
struct BetaVector {
  std::vector<double> beta;
  double beta_plus = 0.0;
};

/// Conventional EM: p_j' proportional to p_j * d_j.
ProbabilityVector em_step(const MixtureProblem& problem, const ProbabilityVector& p);

/// g_i = min_j f_ij, the largest admissible squeeze.
SqueezeVector squeeze_overlap(const MixtureProblem& problem);

/// EM on the likelihood with g squeezed out of every component. g == 0 gives
/// em_step bit for bit. When every component is identical after squeezing the
/// step is a no-op.
ProbabilityVector squeeze1_step(const MixtureProblem& problem, const ProbabilityVector& p,
                                const SqueezeVector& g);

/// beta_j = min over rows with f~_ij > 0 of g_i / (m_i+ * f~_ij), where
/// f~ = f - g and m_i+ counts the positive f~_ik in row i. For two components
/// with g the row minimum this is the exact feasible upper bound; for more
/// components it is a conservative feasible choice. Empty minima give 0.
BetaVector default_beta(const MixtureProblem& problem, const SqueezeVector& g);

/// EM with both g and beta squeezed; the M-step is a waterfill. beta == 0
/// gives squeeze1_step bit for bit.
ProbabilityVector squeeze2_step(const MixtureProblem& problem, const ProbabilityVector& p,
                                const SqueezeVector& g, const BetaVector& beta);

/// Pairwise exchanges between consecutive support points, left to right.
ProbabilityVector nne_pass(const MixtureProblem& problem, const ProbabilityVector& p);

/// Nearest-neighbour pass on interval-censored storage. Touches only rows
/// covering exactly one of each exchanged pair: O(n + m) per pass.
ProbabilityVector sparse_nne_pass(const SparseIntervalMatrix& matrix, const ProbabilityVector& p);

/// Vertex direction step toward the steepest vertex, step length from the
/// two-component exchange kernel.
ProbabilityVector vdm_step(const MixtureProblem& problem, const ProbabilityVector& p);

/// Vertex exchange: move mass from the weakest support point to the steepest
/// vertex.
ProbabilityVector vem_step(const MixtureProblem& problem, const ProbabilityVector& p);

/// VDM, then a nearest-neighbour pass, then one EM step.
ProbabilityVector cocktail_iteration(const MixtureProblem& problem, const ProbabilityVector& p);

}  // namespace mixem
