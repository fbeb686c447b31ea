#pragma once

// Storage-generic implementation of every iteration mapping. One Engine owns
// the per-solve buffers (eta, weights, gradient, pair rows) and reuses them
// across steps. Each step recomputes eta from the incoming iterate and leaves
// the iterate normalized exactly as a ProbabilityVector would be.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mixem/error.hpp"
#include "mixem/exchange.hpp"
#include "mixem/kernels.hpp"
#include "mixem/probability.hpp"
#include "mixem/waterfill.hpp"
#include "storage_ops.hpp"

namespace mixem::detail {

/// Relative tolerance under which two derivatives count as tied. Dense and
/// interval kernels sum in different orders, so exact ties can differ by a
/// few ulps between the two paths.
inline constexpr double kTieTolerance = 1e-12;

/// Lowest index whose value is within tolerance of the maximum.
inline std::size_t argmax_lowest(std::span<const double> d) {
  double best = d[0];
  for (double x : d) best = std::max(best, x);
  const double cutoff = best - kTieTolerance * std::abs(best);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] >= cutoff) return j;
  }
  return 0;
}

/// Lowest support index whose value is within tolerance of the support minimum.
inline std::size_t argmin_lowest_on_support(std::span<const double> d,
                                            std::span<const double> p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (p[j] > 0.0) best = std::min(best, d[j]);
  }
  const double cutoff = best + kTieTolerance * std::abs(best);
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (p[j] > 0.0 && d[j] <= cutoff) return j;
  }
  return 0;
}

/// Moves `shift` onto u from v, landing exactly on the simplex face when the
/// shift is clamped.
inline void apply_shift(std::vector<double>& p, std::size_t u, std::size_t v, double shift) {
  if (shift == p[v]) {
    p[u] += p[v];
    p[v] = 0.0;
  } else if (shift == -p[u]) {
    p[v] += p[u];
    p[u] = 0.0;
  } else {
    p[u] += shift;
    p[v] -= shift;
  }
}

template <class Storage>
class Engine {
 public:
  explicit Engine(const Storage& storage)
      : f_(storage), eta_(storage.n()), weights_(storage.n()), grad_(storage.m()) {}

  std::size_t n() const { return f_.n(); }
  std::size_t m() const { return f_.m(); }
  std::span<const double> eta() const { return eta_; }
  std::span<const double> gradient() const { return grad_; }

  void refresh_eta(std::span<const double> p) {
    compute_eta(f_, p, eta_);
    for (std::size_t i = 0; i < eta_.size(); ++i) {
      if (!(eta_[i] >= kEtaFloor)) {
        throw DegenerateError("mixture density of observation " + std::to_string(i) +
                              " fell below " + std::to_string(kEtaFloor));
      }
      weights_[i] = 1.0 / eta_[i];
    }
  }

  /// d_j at the current eta.
  void refresh_gradient() { column_sums(f_, weights_, grad_); }

  double log_likelihood_at_eta() const {
    double l = 0.0;
    for (double e : eta_) l += std::log(e);
    return l;
  }

  double gap(std::span<const double> p) {
    refresh_eta(p);
    refresh_gradient();
    double best = grad_[0];
    for (double d : grad_) best = std::max(best, d);
    return best - static_cast<double>(n());
  }

  void em(std::vector<double>& p) {
    refresh_eta(p);
    refresh_gradient();
    rescale_products(p, grad_);
  }

  void squeeze1(std::vector<double>& p, std::span<const double> g) {
    refresh_eta(p);
    residual_column_sums(f_, weights_, g, grad_);
    rescale_products(p, grad_);
  }

  void squeeze2(std::vector<double>& p, std::span<const double> g,
                std::span<const double> beta) {
    refresh_eta(p);
    residual_column_sums(f_, weights_, g, grad_);
    std::vector<double> s(m());
    double total = 0.0;
    for (std::size_t j = 0; j < m(); ++j) {
      s[j] = (p[j] + beta[j]) * grad_[j];
      total += s[j];
    }
    // Identical components after squeezing: the M-step is not unique.
    if (!(total > 0.0)) return;
    p = waterfill(s, beta, 1.0).p;
    normalize_in_place(p);
  }

  void vdm(std::vector<double>& p) {
    refresh_eta(p);
    refresh_gradient();
    const std::size_t target = argmax_lowest(grad_);
    // Two-column subproblem: the target vertex (weight delta) against the
    // current mixture (weight 1 - delta), whose density is eta itself.
    rows_.clear();
    for (std::size_t i = 0; i < n(); ++i) {
      const double f = value(f_, i, target);
      if (f != eta_[i]) rows_.push_back({i, f, eta_[i]});
    }
    const double delta = exchange_shift(rows_, eta_, 0.0, 1.0);
    if (delta == 0.0) return;
    if (delta == 1.0) {
      std::fill(p.begin(), p.end(), 0.0);
      p[target] = 1.0;
      return;
    }
    for (double& x : p) x *= (1.0 - delta);
    p[target] += delta;
    normalize_in_place(p);
  }

  void vem(std::vector<double>& p) {
    refresh_eta(p);
    refresh_gradient();
    const std::size_t up = argmax_lowest(grad_);
    const std::size_t down = argmin_lowest_on_support(grad_, p);
    if (up == down) return;
    exchange(p, up, down);
    normalize_in_place(p);
  }

  void nne(std::vector<double>& p) {
    refresh_eta(p);
    support_.clear();
    for (std::size_t j = 0; j < m(); ++j) {
      if (p[j] > 0.0) support_.push_back(j);
    }
    for (std::size_t k = 0; k + 1 < support_.size(); ++k) {
      exchange(p, support_[k], support_[k + 1]);
    }
    normalize_in_place(p);
  }

 private:
  // p_j <- c_j p_j / sum_k c_k p_k; unchanged if the sum vanishes.
  void rescale_products(std::vector<double>& p, std::span<const double> c) {
    double total = 0.0;
    for (std::size_t j = 0; j < m(); ++j) total += c[j] * p[j];
    if (!(total > 0.0)) return;
    const double delta = 1.0 / total;
    for (std::size_t j = 0; j < m(); ++j) p[j] = delta * (c[j] * p[j]);
    normalize_in_place(p);
  }

  // Pairwise exchange with eta kept current for the touched rows.
  void exchange(std::vector<double>& p, std::size_t u, std::size_t v) {
    rows_.clear();
    for_each_pair_row(f_, u, v, [this](std::size_t i, double fu, double fv) {
      rows_.push_back({i, fu, fv});
    });
    const double shift = exchange_shift(rows_, eta_, p[u], p[v]);
    if (shift == 0.0) return;
    apply_shift(p, u, v, shift);
    for (const PairRow& r : rows_) eta_[r.row] += (r.f_u - r.f_v) * shift;
  }

  const Storage& f_;
  std::vector<double> eta_;
  std::vector<double> weights_;
  std::vector<double> grad_;
  std::vector<PairRow> rows_;
  std::vector<std::size_t> support_;
};

}  // namespace mixem::detail
