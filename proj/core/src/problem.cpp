#include "mixem/problem.hpp"

#include <cmath>
#include <string>

#include "mixem/error.hpp"

namespace mixem {

DenseDensities::DenseDensities(std::size_t n, std::size_t m, std::vector<double> values)
    : n_(n), m_(m), values_(std::move(values)) {
  if (n_ == 0 || m_ == 0) throw InputError("density table needs n >= 1 and m >= 1");
  if (values_.size() != n_ * m_) {
    throw InputError("density table has " + std::to_string(values_.size()) +
                     " entries, expected " + std::to_string(n_ * m_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    bool positive = false;
    for (std::size_t j = 0; j < m_; ++j) {
      const double f = values_[i * m_ + j];
      if (!std::isfinite(f) || f < 0.0) {
        throw InputError("density (" + std::to_string(i) + ", " + std::to_string(j) +
                         ") is negative or not finite");
      }
      positive = positive || f > 0.0;
    }
    if (!positive) throw InputError("row " + std::to_string(i) + " has no positive density");
  }
}

MixtureProblem::MixtureProblem(DenseDensities dense) : storage_(std::move(dense)) {}

MixtureProblem::MixtureProblem(SparseIntervalMatrix sparse) : storage_(std::move(sparse)) {}

MixtureProblem MixtureProblem::dense(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("density table needs n >= 1");
  const std::size_t m = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw InputError("density rows have different lengths");
    values.insert(values.end(), row.begin(), row.end());
  }
  return MixtureProblem(DenseDensities(rows.size(), m, std::move(values)));
}

std::size_t MixtureProblem::n() const {
  return std::visit([](const auto& s) { return s.n(); }, storage_);
}

std::size_t MixtureProblem::m() const {
  return std::visit([](const auto& s) { return s.m(); }, storage_);
}

double MixtureProblem::density(std::size_t i, std::size_t j) const {
  if (const auto* dense = std::get_if<DenseDensities>(&storage_)) return (*dense)(i, j);
  return std::get<SparseIntervalMatrix>(storage_).covers(i, j) ? 1.0 : 0.0;
}

MixtureProblem MixtureProblem::to_dense() const {
  if (const auto* sparse = std::get_if<SparseIntervalMatrix>(&storage_)) {
    return MixtureProblem(sparse->to_dense());
  }
  return *this;
}

}  // namespace mixem
