#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mixem {

/// Two-component subproblem: maximize sum_i log(r_i + f_iu x_u + f_iv x_v)
/// over x_u + x_v = beta0, x >= 0, starting from (p_u, p_v).
struct ExchangeSpec {
  std::size_t u = 0;
  std::size_t v = 1;
  double beta0 = 0.0;
  std::vector<double> residuals;
  /// Largest squeeze on each side that keeps every row's leftover density
  /// nonnegative; zero when no row favours that side.
  double beta1 = 0.0;
  double beta2 = 0.0;
};

ExchangeSpec make_exchange_spec(std::span<const double> f_u, std::span<const double> f_v,
                                std::span<const double> residuals, double p_u, double p_v);

/// One EM iteration of the squeezed two-component problem. Can move the whole
/// of beta0 to one side in a single step. Identical columns are a no-op.
std::pair<double, double> exchange_kernel(const ExchangeSpec& spec, std::span<const double> f_u,
                                          std::span<const double> f_v, double p_u, double p_v);

namespace detail {

/// A row where the two exchanged columns differ.
struct PairRow {
  std::size_t row;
  double f_u;
  double f_v;
};

/// Signed mass moved onto u (negative: onto v), clamped to [-p_u, p_v].
/// `eta` is indexed by PairRow::row and holds r_i + f_iu p_u + f_iv p_v.
/// Rows with f_iu == f_iv must be omitted; they do not affect the update.
double exchange_shift(std::span<const PairRow> rows, std::span<const double> eta, double p_u,
                      double p_v);

}  // namespace detail

}  // namespace mixem
