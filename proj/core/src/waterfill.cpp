#include "mixem/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mixem/error.hpp"

namespace mixem {

WaterfillResult waterfill(std::span<const double> weights, std::span<const double> beta,
                          double total) {
  if (weights.size() != beta.size()) throw InputError("waterfill: S and beta differ in length");
  if (!(total > 0.0) || !std::isfinite(total)) throw InputError("waterfill: total must be > 0");
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] >= 0.0) || !std::isfinite(weights[j]) || !(beta[j] >= 0.0) ||
        !std::isfinite(beta[j])) {
      throw InputError("waterfill: S and beta must be finite and nonnegative");
    }
    weight_sum += weights[j];
  }
  if (!(weight_sum > 0.0)) throw InputError("waterfill: S sums to zero");

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] > 0.0) order.push_back(j);
  }
  auto breakpoint = [&](std::size_t j) { return beta[j] / weights[j]; };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return breakpoint(a) < breakpoint(b); });

  // Component j turns on once delta exceeds beta_j / S_j. Add components in
  // breakpoint order until the level solving the active-set equation no longer
  // reaches the next breakpoint.
  double s = 0.0;
  double b = 0.0;
  std::size_t active = 0;
  while (active < order.size()) {
    s += weights[order[active]];
    b += beta[order[active]];
    ++active;
    const double delta = (total + b) / s;
    if (active == order.size() || delta <= breakpoint(order[active])) break;
  }

  // Final level summed in ascending index order, so that beta == 0 reproduces
  // plain normalization bit for bit.
  std::vector<bool> on(weights.size(), false);
  for (std::size_t k = 0; k < active; ++k) on[order[k]] = true;
  s = 0.0;
  b = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (on[j]) {
      s += weights[j];
      b += beta[j];
    }
  }
  WaterfillResult out{(total + b) / s, std::vector<double>(weights.size(), 0.0)};
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (on[j]) out.p[j] = std::max(0.0, out.delta * weights[j] - beta[j]);
  }
  return out;
}

}  // namespace mixem
