#pragma once

#include <span>
#include <vector>

namespace mixem {

struct WaterfillResult {
  double delta;
  std::vector<double> p;
};

/// Solves p_j = max(0, delta * S_j - beta_j) subject to sum_j p_j = total.
///
/// Components with S_j == 0 stay at zero. Breakpoints beta_j / S_j are sorted
/// once, so the cost is O(m log m). Throws InputError when sum_j S_j == 0, when
/// sizes differ, or when total <= 0.
WaterfillResult waterfill(std::span<const double> weights, std::span<const double> beta,
                          double total);

}  // namespace mixem
