#pragma once

#include <cmath>

namespace mixem::detail {

/// Neumaier's improved Kahan summation. Column sums go through this in both
/// storages so that dense and interval kernels agree to about an ulp.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace mixem::detail
