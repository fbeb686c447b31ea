#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mixem/interval_matrix.hpp"

namespace mixem {

/// Row-major n x m table of component densities f_ij.
class DenseDensities {
 public:
  DenseDensities(std::size_t n, std::size_t m, std::vector<double> values);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * m_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * m_, m_);
  }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> values_;
};

/// Known component densities evaluated at every observation.
///
/// Immutable after construction. Every entry is finite and nonnegative, and
/// every row has a positive entry, so the log-likelihood is finite at the
/// uniform vector.
class MixtureProblem {
 public:
  using Storage = std::variant<DenseDensities, SparseIntervalMatrix>;

  explicit MixtureProblem(DenseDensities dense);
  explicit MixtureProblem(SparseIntervalMatrix sparse);

  /// Convenience for small literal problems: one inner vector per observation.
  static MixtureProblem dense(const std::vector<std::vector<double>>& rows);

  std::size_t n() const;
  std::size_t m() const;
  bool is_sparse() const { return std::holds_alternative<SparseIntervalMatrix>(storage_); }
  const Storage& storage() const { return storage_; }
  double density(std::size_t i, std::size_t j) const;

  /// Same problem with dense storage. Identity for dense problems.
  MixtureProblem to_dense() const;

 private:
  Storage storage_;
};

}  // namespace mixem
