#pragma once

// Shared fixtures and small random generators for the test binaries.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "brre/maps.hpp"

namespace brre::testing {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline std::size_t uniform_count(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng());
}

inline RealMatrix random_matrix(Eigen::Index rows, Eigen::Index cols) {
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(-1.0, 1.0);
  return m;
}

/// Palindromic coefficients of length 2K+1, not normalized.
inline RealVector random_palindrome(std::size_t K) {
  RealVector c(static_cast<Eigen::Index>(2 * K + 1));
  for (std::size_t k = 0; k <= K; ++k) {
    const double v = uniform(-1.0, 1.0);
    c[static_cast<Eigen::Index>(K + k)] = v;
    c[static_cast<Eigen::Index>(K - k)] = v;
  }
  return c;
}

inline Trajectory standard_orbit(double k, double x, double y, std::size_t n) {
  MapPoint x0(2);
  x0 << x, y;
  return sample_trajectory(StandardMap(k), EmbeddingObservable(), x0, n);
}

inline Trajectory cosine_signal(double omega, std::size_t n, double phase = 0.0) {
  std::vector<double> a(n);
  for (std::size_t t = 0; t < n; ++t) a[t] = std::cos(two_pi * omega * static_cast<double>(t) + phase);
  return Trajectory::scalar(a);
}

/// exp(cos 2 pi omega t) with golden omega.
inline Trajectory exp_cos_signal(std::size_t n) {
  std::vector<double> a(n);
  for (std::size_t t = 0; t < n; ++t) a[t] = std::exp(std::cos(two_pi * golden * static_cast<double>(t)));
  return Trajectory::scalar(a);
}

/// Smallest achievable maximum distance over all one-to-one pairings of two
/// root lists (bottleneck assignment: threshold search plus Kuhn matching).
inline double pairing_distance(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return std::numeric_limits<double>::infinity();
  if (n == 0) return 0.0;
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(a[i] - b[j]);

  auto perfect = [&](double limit) {
    std::vector<long> owner(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<char> seen(n, 0);
      auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (std::size_t v = 0; v < n; ++v) {
          if (d[u * n + v] > limit || seen[v]) continue;
          seen[v] = 1;
          if (owner[v] < 0 || self(self, static_cast<std::size_t>(owner[v]))) {
            owner[v] = static_cast<long>(u);
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, i)) return false;
    }
    return true;
  };

  std::vector<double> levels = d;
  std::sort(levels.begin(), levels.end());
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect(levels[mid])) hi = mid;
    else lo = mid + 1;
  }
  return levels[lo];
}

}  // namespace brre::testing
