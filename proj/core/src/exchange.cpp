#include "mixem/exchange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixem/error.hpp"

namespace mixem {

namespace detail {

constexpr double kFaceTolerance = 1e-12;

double exchange_shift(std::span<const PairRow> rows, std::span<const double> eta, double p_u,
                      double p_v) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double beta0 = p_u + p_v;
  if (!(beta0 > 0.0)) return 0.0;

  // a, b: derivative contributions of the rows favouring u and v respectively.
  // beta_u, beta_v: how much each side can be squeezed before some row's
  // leftover density r_i + beta0 * min(f_iu, f_iv) would go negative.
  double a = 0.0;
  double b = 0.0;
  double beta_u = kInf;
  double beta_v = kInf;
  for (const PairRow& row : rows) {
    const double e = eta[row.row];
    const double r = std::max(0.0, e - row.f_u * p_u - row.f_v * p_v);
    if (row.f_u > row.f_v) {
      const double diff = row.f_u - row.f_v;
      a += diff / e;
      beta_u = std::min(beta_u, (r + beta0 * row.f_v) / diff);
    } else if (row.f_v > row.f_u) {
      const double diff = row.f_v - row.f_u;
      b += diff / e;
      beta_v = std::min(beta_v, (r + beta0 * row.f_u) / diff);
    }
  }
  // A side may be emptied only if no row then loses all its density.
  const bool u_can_empty = beta_u > 0.0;
  const bool v_can_empty = beta_v > 0.0;
  if (beta_u == kInf) beta_u = 0.0;
  if (beta_v == kInf) beta_v = 0.0;

  // With U = p_u + beta_u, V = p_v + beta_v the clamped EM update
  //   x_u = (beta0 + beta_u + beta_v) U a / (U a + V b) - beta_u
  // equals p_u + U V (a - b) / (U a + V b). The shift form avoids cancelling
  // two large terms when a beta is big.
  const double big_u = p_u + beta_u;
  const double big_v = p_v + beta_v;
  if (!(big_u * a + big_v * b > 0.0)) return 0.0;
  if (big_u == 0.0 || big_v == 0.0) return 0.0;
  const double shift = (a - b) / (a / big_v + b / big_u);
  // Landing within rounding distance of a face lands on it, so that paths
  // summing in different orders agree on which components leave the support.
  if (v_can_empty && p_v - shift <= kFaceTolerance * beta0) return p_v;
  if (u_can_empty && shift + p_u <= kFaceTolerance * beta0) return -p_u;
  return std::clamp(shift, -p_u, p_v);
}

}  // namespace detail

namespace {

void check_columns(std::span<const double> f_u, std::span<const double> f_v,
                   std::span<const double> residuals, double p_u, double p_v) {
  if (f_u.size() != f_v.size() || f_u.size() != residuals.size()) {
    throw InputError("exchange: column and residual lengths differ");
  }
  if (!(p_u >= 0.0) || !(p_v >= 0.0) || !(p_u + p_v > 0.0)) {
    throw InputError("exchange: masses must be nonnegative with a positive total");
  }
  for (std::size_t i = 0; i < f_u.size(); ++i) {
    if (!(f_u[i] >= 0.0) || !(f_v[i] >= 0.0) || !(residuals[i] >= 0.0)) {
      throw InputError("exchange: densities and residuals must be nonnegative");
    }
    if (!(residuals[i] + f_u[i] * p_u + f_v[i] * p_v > 0.0)) {
      throw InputError("exchange: row " + std::to_string(i) + " has zero density");
    }
  }
}

}  // namespace

ExchangeSpec make_exchange_spec(std::span<const double> f_u, std::span<const double> f_v,
                                std::span<const double> residuals, double p_u, double p_v) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  check_columns(f_u, f_v, residuals, p_u, p_v);
  ExchangeSpec spec;
  spec.beta0 = p_u + p_v;
  spec.residuals.assign(residuals.begin(), residuals.end());
  double beta1 = kInf;
  double beta2 = kInf;
  for (std::size_t i = 0; i < f_u.size(); ++i) {
    if (f_u[i] > f_v[i]) {
      beta1 = std::min(beta1, (residuals[i] + spec.beta0 * f_v[i]) / (f_u[i] - f_v[i]));
    } else if (f_v[i] > f_u[i]) {
      beta2 = std::min(beta2, (residuals[i] + spec.beta0 * f_u[i]) / (f_v[i] - f_u[i]));
    }
  }
  spec.beta1 = beta1 == kInf ? 0.0 : beta1;
  spec.beta2 = beta2 == kInf ? 0.0 : beta2;
  return spec;
}

std::pair<double, double> exchange_kernel(const ExchangeSpec& spec, std::span<const double> f_u,
                                          std::span<const double> f_v, double p_u, double p_v) {
  check_columns(f_u, f_v, spec.residuals, p_u, p_v);
  std::vector<detail::PairRow> rows;
  std::vector<double> eta(f_u.size());
  for (std::size_t i = 0; i < f_u.size(); ++i) {
    eta[i] = spec.residuals[i] + f_u[i] * p_u + f_v[i] * p_v;
    if (f_u[i] != f_v[i]) rows.push_back({i, f_u[i], f_v[i]});
  }
  const double shift = detail::exchange_shift(rows, eta, p_u, p_v);
  if (shift == p_v) return {p_u + p_v, 0.0};
  if (shift == -p_u) return {0.0, p_u + p_v};
  return {p_u + shift, p_v - shift};
}

}  // namespace mixem
