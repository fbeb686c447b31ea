#include "mixem/interval_matrix.hpp"

#include <cmath>
#include <string>

#include "compensated_sum.hpp"
#include "mixem/error.hpp"
#include "mixem/kernels.hpp"
#include "mixem/probability.hpp"
#include "mixem/problem.hpp"

namespace mixem {

namespace {

// Counting sort of row indices by key; rows with equal key keep ascending order.
void bucket_rows(std::size_t m, std::span<const std::size_t> keys,
                 std::vector<std::size_t>& offsets, std::vector<std::size_t>& rows) {
  offsets.assign(m + 1, 0);
  for (std::size_t k : keys) ++offsets[k + 1];
  for (std::size_t j = 0; j < m; ++j) offsets[j + 1] += offsets[j];
  rows.assign(keys.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::size_t i = 0; i < keys.size(); ++i) rows[cursor[keys[i]]++] = i;
}

}  // namespace

SparseIntervalMatrix::SparseIntervalMatrix(std::size_t m, std::vector<std::size_t> first,
                                           std::vector<std::size_t> last)
    : m_(m), first_(std::move(first)), last_(std::move(last)) {
  if (m_ == 0) throw InputError("interval matrix needs m >= 1");
  if (first_.empty()) throw InputError("interval matrix needs n >= 1");
  if (first_.size() != last_.size()) throw InputError("first/last index vectors differ in length");
  for (std::size_t i = 0; i < first_.size(); ++i) {
    if (first_[i] > last_[i] || last_[i] >= m_) {
      throw InputError("row " + std::to_string(i) + " has invalid column range [" +
                       std::to_string(first_[i]) + ", " + std::to_string(last_[i]) + "]");
    }
  }
  bucket_rows(m_, first_, start_offsets_, start_rows_);
  bucket_rows(m_, last_, end_offsets_, end_rows_);
}

std::span<const std::size_t> SparseIntervalMatrix::rows_starting_at(std::size_t j) const {
  return std::span<const std::size_t>(start_rows_)
      .subspan(start_offsets_[j], start_offsets_[j + 1] - start_offsets_[j]);
}

std::span<const std::size_t> SparseIntervalMatrix::rows_ending_at(std::size_t j) const {
  return std::span<const std::size_t>(end_rows_)
      .subspan(end_offsets_[j], end_offsets_[j + 1] - end_offsets_[j]);
}

DenseDensities SparseIntervalMatrix::to_dense() const {
  std::vector<double> values(n() * m_, 0.0);
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t j = first_[i]; j <= last_[i]; ++j) values[i * m_ + j] = 1.0;
  }
  return DenseDensities(n(), m_, std::move(values));
}

void sparse_eta(const SparseIntervalMatrix& matrix, std::span<const double> p,
                std::span<double> eta) {
  if (p.size() != matrix.m() || eta.size() != matrix.n()) {
    throw InputError("sparse_eta: dimension mismatch");
  }
  // p_0 + ... + p_{j-1} as an unevaluated pair sum[j] + carry[j]. A plain
  // prefix sum would leave every eta with an absolute error near 1e-16, which
  // is a large relative error for the small ones.
  std::vector<double> sum(matrix.m() + 1, 0.0);
  std::vector<double> carry(matrix.m() + 1, 0.0);
  detail::CompensatedSum running;
  for (std::size_t j = 0; j < matrix.m(); ++j) {
    running.add(p[j]);
    sum[j + 1] = running.sum;
    carry[j + 1] = running.carry;
  }
  for (std::size_t i = 0; i < matrix.n(); ++i) {
    const std::size_t a = matrix.first(i);
    const std::size_t b = matrix.last(i) + 1;
    eta[i] = (sum[b] - sum[a]) + (carry[b] - carry[a]);
  }
}

MixtureDensities sparse_eta(const SparseIntervalMatrix& matrix, const ProbabilityVector& p) {
  MixtureDensities out{std::vector<double>(matrix.n())};
  sparse_eta(matrix, p.values(), out.eta);
  return out;
}

void sparse_column_sums(const SparseIntervalMatrix& matrix, std::span<const double> weights,
                        std::span<double> out) {
  if (weights.size() != matrix.n() || out.size() != matrix.m()) {
    throw InputError("sparse_column_sums: dimension mismatch");
  }
  // Walk the columns keeping the compensated total of the rows currently
  // open. Columns covered by no row are exactly zero.
  detail::CompensatedSum open;
  std::size_t active = 0;
  for (std::size_t j = 0; j < matrix.m(); ++j) {
    for (std::size_t i : matrix.rows_starting_at(j)) {
      open.add(weights[i]);
      ++active;
    }
    out[j] = active > 0 ? open.value() : 0.0;
    for (std::size_t i : matrix.rows_ending_at(j)) {
      open.add(-weights[i]);
      --active;
    }
    if (active == 0) open = {};
  }
}

SimplexGradient sparse_gradient(const SparseIntervalMatrix& matrix,
                                const MixtureDensities& densities) {
  if (densities.eta.size() != matrix.n()) throw InputError("sparse_gradient: dimension mismatch");
  std::vector<double> weights(matrix.n());
  for (std::size_t i = 0; i < matrix.n(); ++i) {
    if (!(densities.eta[i] >= kEtaFloor)) {
      throw DegenerateError("mixture density of observation " + std::to_string(i) +
                            " is zero");
    }
    weights[i] = 1.0 / densities.eta[i];
  }
  SimplexGradient out{std::vector<double>(matrix.m())};
  sparse_column_sums(matrix, weights, out.d);
  return out;
}

}  // namespace mixem
