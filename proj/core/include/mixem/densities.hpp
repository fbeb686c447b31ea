#pragma once

#include <vector>

namespace mixem {

/// eta_i = sum_k f_ik p_k for every observation i.
struct MixtureDensities {
  std::vector<double> eta;
};

/// d_j = dl/dp_j = sum_i f_ij / eta_i. At a global maximum max_j d_j = n.
struct SimplexGradient {
  std::vector<double> d;
};

}  // namespace mixem
