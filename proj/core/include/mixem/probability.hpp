#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mixem {

/// Mixture proportions on the probability simplex.
///
/// Entries are nonnegative and sum to one. Construction absorbs benign
/// floating-point drift (|sum - 1| <= kRenormTolerance) by dividing through
/// by the sum, and rejects anything further off.
class ProbabilityVector {
 public:
  static constexpr double kRenormTolerance = 1e-9;

  explicit ProbabilityVector(std::vector<double> p);

  static ProbabilityVector uniform(std::size_t m);
  static ProbabilityVector unit(std::size_t m, std::size_t j);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t j) const { return p_[j]; }
  std::span<const double> values() const { return p_; }
  const std::vector<double>& vector() const { return p_; }

  /// Indices with p_j > 0, ascending.
  std::vector<std::size_t> support() const;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> p_;
};

namespace detail {
// Shared by ProbabilityVector and the solver engine so that in-place iterates
// go through exactly the same normalization as constructed vectors.
void normalize_in_place(std::vector<double>& p);
}  // namespace detail

}  // namespace mixem
