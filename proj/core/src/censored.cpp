#include "mixem/censored.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "mixem/error.hpp"

namespace mixem {

namespace {

std::string describe(const Observation& o) {
  std::ostringstream s;
  s << '(' << o.left << ", ";
  if (o.right) {
    s << *o.right;
  } else {
    s << "inf";
  }
  s << ']';
  return s.str();
}

}  // namespace

CensoredSample::CensoredSample(std::vector<Observation> observations)
    : observations_(std::move(observations)) {
  if (observations_.empty()) throw InputError("censored sample is empty");
  for (std::size_t i = 0; i < observations_.size(); ++i) {
    const Observation& o = observations_[i];
    const bool ok = std::isfinite(o.left) && o.left >= 0.0 &&
                    (!o.right || (std::isfinite(*o.right) && *o.right >= o.left));
    if (!ok) {
      throw InputError("observation " + std::to_string(i) + " " + describe(o) +
                       " is not a valid interval");
    }
  }
}

CensoredProblem build_censored_problem(const CensoredSample& sample) {
  TimeGrid grid;
  grid.finite_times.reserve(2 * sample.size());
  for (const Observation& o : sample.observations()) {
    if (o.left > 0.0) grid.finite_times.push_back(o.left);
    if (o.right && *o.right > 0.0) grid.finite_times.push_back(*o.right);
  }
  std::sort(grid.finite_times.begin(), grid.finite_times.end());
  grid.finite_times.erase(std::unique(grid.finite_times.begin(), grid.finite_times.end()),
                          grid.finite_times.end());

  const auto& z = grid.finite_times;
  const std::size_t m = grid.masses();
  const std::size_t infinity_column = m - 1;
  std::vector<std::size_t> first(sample.size());
  std::vector<std::size_t> last(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Observation& o = sample[i];
    if (o.is_exact()) {
      if (o.left == 0.0) {
        throw InputError("observation " + std::to_string(i) + " " + describe(o) +
                         " is an exact time at the origin and covers no grid mass");
      }
      const auto at = std::lower_bound(z.begin(), z.end(), o.left);
      first[i] = last[i] = static_cast<std::size_t>(at - z.begin());
      continue;
    }
    // Grid masses z_j in (left, right].
    first[i] = static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), o.left) - z.begin());
    if (o.right) {
      last[i] = static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), *o.right) -
                                         z.begin()) - 1;
    } else {
      last[i] = infinity_column;
    }
  }
  return CensoredProblem{std::move(grid),
                         SparseIntervalMatrix(m, std::move(first), std::move(last))};
}

NpmleResult npmle(const CensoredSample& sample, const SolverConfig& config, KernelPath path) {
  CensoredProblem built = build_censored_problem(sample);
  const MixtureProblem problem = path == KernelPath::sparse
                                     ? MixtureProblem(built.matrix)
                                     : MixtureProblem(built.matrix.to_dense());
  SolveReport report = solve(problem, config);

  std::vector<double> cdf(built.grid.finite_times.size());
  double running = 0.0;
  for (std::size_t j = 0; j < cdf.size(); ++j) {
    running += report.p_hat[j];
    cdf[j] = std::min(running, 1.0);
  }
  NpmleEstimate estimate{std::move(built.grid), report.p_hat, std::move(cdf)};
  return NpmleResult{std::move(estimate), std::move(report)};
}

}  // namespace mixem
