#pragma once

// Storage-specific primitives used by the solver engine. Each overload set has
// a dense version (plain loops, ascending index order) and an interval-censored
// version (prefix sums and difference arrays, O(n + m)).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "compensated_sum.hpp"
#include "mixem/interval_matrix.hpp"
#include "mixem/problem.hpp"

namespace mixem::detail {

// eta_i = sum_j f_ij p_j --------------------------------------------------------

inline void compute_eta(const DenseDensities& f, std::span<const double> p,
                        std::span<double> eta) {
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto row = f.row(i);
    CompensatedSum s;
    for (std::size_t j = 0; j < f.m(); ++j) s.add(row[j] * p[j]);
    eta[i] = s.value();
  }
}

inline void compute_eta(const SparseIntervalMatrix& f, std::span<const double> p,
                        std::span<double> eta) {
  sparse_eta(f, p, eta);
}

// out_j = sum_i (f_ij - g_i) w_i. With g == 0 this is bitwise the plain column
// sum, which the collapse identities rely on.

inline void residual_column_sums(const DenseDensities& f, std::span<const double> w,
                                 std::span<const double> g, std::span<double> out) {
  std::vector<CompensatedSum> acc(f.m());
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto row = f.row(i);
    for (std::size_t j = 0; j < f.m(); ++j) acc[j].add((row[j] - g[i]) * w[i]);
  }
  for (std::size_t j = 0; j < f.m(); ++j) out[j] = acc[j].value();
}

inline bool is_full_row(const SparseIntervalMatrix& f, std::size_t i) {
  return f.first(i) == 0 && f.last(i) + 1 == f.m();
}

// Admissible g is zero on every row that misses a column, so only full rows
// change weight.
inline void residual_column_sums(const SparseIntervalMatrix& f, std::span<const double> w,
                                 std::span<const double> g, std::span<double> out) {
  std::vector<double> scaled(w.begin(), w.end());
  for (std::size_t i = 0; i < f.n(); ++i) {
    if (is_full_row(f, i)) scaled[i] = w[i] * (1.0 - g[i]);
  }
  sparse_column_sums(f, scaled, out);
}

template <class Storage>
void column_sums(const Storage& f, std::span<const double> w, std::span<double> out) {
  if constexpr (std::is_same_v<Storage, SparseIntervalMatrix>) {
    sparse_column_sums(f, w, out);
  } else {
    std::vector<CompensatedSum> acc(f.m());
    for (std::size_t i = 0; i < f.n(); ++i) {
      const auto row = f.row(i);
      for (std::size_t j = 0; j < f.m(); ++j) acc[j].add(row[j] * w[i]);
    }
    for (std::size_t j = 0; j < f.m(); ++j) out[j] = acc[j].value();
  }
}

// Single entries ------------------------------------------------------------

inline double value(const DenseDensities& f, std::size_t i, std::size_t j) { return f(i, j); }

inline double value(const SparseIntervalMatrix& f, std::size_t i, std::size_t j) {
  return f.covers(i, j) ? 1.0 : 0.0;
}

// g_i = min_j f_ij ------------------------------------------------------------

inline void row_minimum(const DenseDensities& f, std::span<double> g) {
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto row = f.row(i);
    g[i] = *std::min_element(row.begin(), row.end());
  }
}

inline void row_minimum(const SparseIntervalMatrix& f, std::span<double> g) {
  for (std::size_t i = 0; i < f.n(); ++i) g[i] = is_full_row(f, i) ? 1.0 : 0.0;
}

// Rows where columns u and v differ -----------------------------------------

template <class Fn>
void for_each_pair_row(const DenseDensities& f, std::size_t u, std::size_t v, Fn&& fn) {
  for (std::size_t i = 0; i < f.n(); ++i) {
    const double fu = f(i, u);
    const double fv = f(i, v);
    if (fu != fv) fn(i, fu, fv);
  }
}

// Rows covering lo but not hi end in [lo, hi) and start at or before lo; rows
// covering hi but not lo start in (lo, hi] and end at or after hi.
template <class Fn>
void for_each_pair_row(const SparseIntervalMatrix& f, std::size_t u, std::size_t v, Fn&& fn) {
  const std::size_t lo = std::min(u, v);
  const std::size_t hi = std::max(u, v);
  const bool u_is_lo = u == lo;
  for (std::size_t j = lo; j < hi; ++j) {
    for (std::size_t i : f.rows_ending_at(j)) {
      if (f.first(i) <= lo) fn(i, u_is_lo ? 1.0 : 0.0, u_is_lo ? 0.0 : 1.0);
    }
  }
  for (std::size_t j = lo + 1; j <= hi; ++j) {
    for (std::size_t i : f.rows_starting_at(j)) {
      if (f.last(i) >= hi) fn(i, u_is_lo ? 0.0 : 1.0, u_is_lo ? 1.0 : 0.0);
    }
  }
}

// Default beta ---------------------------------------------------------------

inline std::vector<double> default_beta(const DenseDensities& f, std::span<const double> g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> beta(f.m(), kInf);
  for (std::size_t i = 0; i < f.n(); ++i) {
    const auto row = f.row(i);
    std::size_t positive = 0;
    for (double x : row) positive += (x - g[i] > 0.0) ? 1 : 0;
    for (std::size_t j = 0; j < f.m(); ++j) {
      const double residual = row[j] - g[i];
      if (residual > 0.0) {
        beta[j] = std::min(beta[j], g[i] / (static_cast<double>(positive) * residual));
      }
    }
  }
  for (double& b : beta) {
    if (b == kInf) b = 0.0;
  }
  return beta;
}

// Rows missing a column have g_i = 0 and contribute a zero bound to every
// column they cover; full rows with g_i < 1 bound every column equally.
inline std::vector<double> default_beta(const SparseIntervalMatrix& f,
                                        std::span<const double> g) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double full_bound = kInf;
  std::vector<long> coverage(f.m() + 1, 0);
  for (std::size_t i = 0; i < f.n(); ++i) {
    if (is_full_row(f, i)) {
      const double residual = 1.0 - g[i];
      if (residual > 0.0) {
        full_bound =
            std::min(full_bound, g[i] / (static_cast<double>(f.m()) * residual));
      }
    } else {
      ++coverage[f.first(i)];
      --coverage[f.last(i) + 1];
    }
  }
  std::vector<double> beta(f.m(), full_bound);
  long running = 0;
  for (std::size_t j = 0; j < f.m(); ++j) {
    running += coverage[j];
    if (running > 0) beta[j] = 0.0;
    if (beta[j] == kInf) beta[j] = 0.0;
  }
  return beta;
}

}  // namespace mixem::detail
