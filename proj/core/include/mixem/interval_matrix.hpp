#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mixem/densities.hpp"

namespace mixem {

class DenseDensities;
class ProbabilityVector;

/// Zero-one density table whose nonzero entries in each row are consecutive:
/// f_ij = 1 iff first(i) <= j <= last(i). Indices are 0-based.
///
/// Rows are also bucketed by first and by last column so that the rows
/// covering exactly one of two columns u < v can be listed in time
/// proportional to (v - u) plus the number of rows returned.
class SparseIntervalMatrix {
 public:
  SparseIntervalMatrix(std::size_t m, std::vector<std::size_t> first,
                       std::vector<std::size_t> last);

  std::size_t n() const { return first_.size(); }
  std::size_t m() const { return m_; }
  std::size_t first(std::size_t i) const { return first_[i]; }
  std::size_t last(std::size_t i) const { return last_[i]; }
  std::span<const std::size_t> firsts() const { return first_; }
  std::span<const std::size_t> lasts() const { return last_; }

  bool covers(std::size_t i, std::size_t j) const {
    return first_[i] <= j && j <= last_[i];
  }

  /// Rows whose interval starts at column j.
  std::span<const std::size_t> rows_starting_at(std::size_t j) const;
  /// Rows whose interval ends at column j.
  std::span<const std::size_t> rows_ending_at(std::size_t j) const;

  /// Materializes the full n x m table. Debug path only: O(nm).
  DenseDensities to_dense() const;

 private:
  std::size_t m_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> last_;
  std::vector<std::size_t> start_offsets_;
  std::vector<std::size_t> start_rows_;
  std::vector<std::size_t> end_offsets_;
  std::vector<std::size_t> end_rows_;
};

/// eta via compensated cumulative sums of p: eta_i = s_last(i) - s_{first(i)-1}.
/// O(n + m).
void sparse_eta(const SparseIntervalMatrix& matrix, std::span<const double> p,
                std::span<double> eta);
MixtureDensities sparse_eta(const SparseIntervalMatrix& matrix, const ProbabilityVector& p);

/// Column sums sum_i f_ij w_i from one sweep over the start and end buckets,
/// a difference array with compensated running total. O(n + m).
void sparse_column_sums(const SparseIntervalMatrix& matrix, std::span<const double> weights,
                        std::span<double> out);

/// d_j = sum_{i: first(i) <= j <= last(i)} 1/eta_i. Throws DegenerateError if
/// some eta_i is below the solver floor.
SimplexGradient sparse_gradient(const SparseIntervalMatrix& matrix,
                                const MixtureDensities& densities);

}  // namespace mixem
