#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mixem/interval_matrix.hpp"
#include "mixem/probability.hpp"
#include "mixem/solve.hpp"

namespace mixem {

/// A failure time known to lie in (left, right].
///
/// `right == nullopt` encodes right censoring (left, inf]; left == 0 encodes
/// left censoring; left == right encodes an exactly observed time.
struct Observation {
  double left = 0.0;
  std::optional<double> right;

  static Observation exact(double t) { return {t, t}; }
  static Observation interval(double l, double r) { return {l, r}; }
  static Observation right_censored(double l) { return {l, std::nullopt}; }

  bool is_exact() const { return right && *right == left; }
  bool is_right_censored() const { return !right.has_value(); }

  friend bool operator==(const Observation&, const Observation&) = default;
};

class CensoredSample {
 public:
  /// Throws InputError on an empty sample or an ill-formed interval.
  explicit CensoredSample(std::vector<Observation> observations);

  std::size_t size() const { return observations_.size(); }
  const std::vector<Observation>& observations() const { return observations_; }
  const Observation& operator[](std::size_t i) const { return observations_[i]; }

 private:
  std::vector<Observation> observations_;
};

/// Distinct finite observation times 0 < z_1 < ... < z_{m-1}. The origin and
/// the point at infinity are implicit: mass j (0-based) sits at finite_times[j]
/// for j < m - 1, and mass m - 1 is the mass beyond the last finite time.
struct TimeGrid {
  std::vector<double> finite_times;

  std::size_t masses() const { return finite_times.size() + 1; }
};

struct CensoredProblem {
  TimeGrid grid;
  SparseIntervalMatrix matrix;
};

/// Sorts the distinct endpoints (exact equality, no tolerance) and maps every
/// observation to the consecutive grid masses it covers. O(n log n). Throws
/// InputError if some observation covers no grid mass (an exact time at 0).
CensoredProblem build_censored_problem(const CensoredSample& sample);

struct NpmleEstimate {
  TimeGrid grid;
  ProbabilityVector masses;
  /// F(z_j) for every finite grid time, same length as grid.finite_times.
  std::vector<double> cdf;

  double mass_beyond_last_time() const { return masses[masses.size() - 1]; }
};

enum class KernelPath { sparse, dense };

struct NpmleResult {
  NpmleEstimate estimate;
  SolveReport report;
};

/// Nonparametric MLE of the failure-time distribution. The dense path expands
/// the full table and exists for cross-checking the sparse kernels.
NpmleResult npmle(const CensoredSample& sample, const SolverConfig& config,
                  KernelPath path = KernelPath::sparse);

}  // namespace mixem
