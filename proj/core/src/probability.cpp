#include "mixem/probability.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mixem/error.hpp"

namespace mixem {

namespace detail {

void normalize_in_place(std::vector<double>& p) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total == 1.0) return;
  for (double& x : p) x /= total;
}

}  // namespace detail

ProbabilityVector::ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw InputError("probability vector must have at least one entry");
  double total = 0.0;
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (!std::isfinite(p_[j]) || p_[j] < 0.0) {
      throw InputError("probability entry " + std::to_string(j) + " is negative or not finite");
    }
    total += p_[j];
  }
  if (std::abs(total - 1.0) > kRenormTolerance) {
    throw InputError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
  detail::normalize_in_place(p_);
}

ProbabilityVector ProbabilityVector::uniform(std::size_t m) {
  if (m == 0) throw InputError("probability vector must have at least one entry");
  return ProbabilityVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

ProbabilityVector ProbabilityVector::unit(std::size_t m, std::size_t j) {
  if (j >= m) throw InputError("unit index out of range");
  std::vector<double> p(m, 0.0);
  p[j] = 1.0;
  return ProbabilityVector(std::move(p));
}

std::vector<std::size_t> ProbabilityVector::support() const {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < p_.size(); ++j) {
    if (p_[j] > 0.0) s.push_back(j);
  }
  return s;
}

}  // namespace mixem
