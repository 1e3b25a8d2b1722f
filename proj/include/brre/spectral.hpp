#pragma once

// Post-processing of a learned filter: roots, mode prominence, rational
// frequencies and the island stacking transform.

#include <cstddef>
#include <utility>
#include <vector>

#include "brre/execution.hpp"
#include "brre/maps.hpp"

namespace brre {

/// b_0 = c_K, b_k = 2 c_{K+k}: the palindromic polynomial as sum_k b_k T_k((z + 1/z)/2).
std::vector<double> chebyshev_coefficients(const RealVector& c);

/// Roots of sum_k b_k T_k(x) from the Chebyshev colleague matrix.
/// Throws DegreeDeflation when |b_K| < 1e-14 |b|.
std::vector<ComplexScalar> colleague_roots(const std::vector<double>& b);

struct RootSet {
  std::vector<ComplexScalar> roots;
  /// Roots unfolded from x within 1e-7 of +-1, where (z + 1/z)/2 = x is ill-conditioned.
  std::vector<bool> low_confidence;
  /// Tolerance of the last unit_circle_filter pass; 0 when unfiltered.
  double unit_circle_tolerance = 0.0;

  std::size_t size() const { return roots.size(); }
};

/// All 2K roots of a palindromic polynomial via the half-size colleague problem.
RootSet palindromic_roots(const RealVector& c);

/// Keeps roots with ||z| - 1| <= tol.
RootSet unit_circle_filter(const RootSet& roots, double tol = 1e-7);

struct ModeEntry {
  ComplexScalar root;
  double frequency = 0.0;  ///< arg(root) / 2 pi
  double prominence = 0.0;
};

struct ModeRanking {
  std::vector<ModeEntry> entries;  ///< descending prominence
  bool rank_deficient = false;
};

/// Weighted least-squares amplitude of each root in the trajectory; frequencies in [0, 1).
ModeRanking mode_prominence(const RootSet& roots, const Trajectory& traj,
                            Execution exec = Execution::Serial);

/// Folds each entry to its upper-half-plane representative (frequency in [0, 1/2])
/// and sums prominences of entries whose folded frequencies agree within `tol`.
ModeRanking merge_conjugate_modes(const ModeRanking& ranking, double tol = 1e-7);

struct RationalVerdict {
  bool is_rational = false;
  long numerator = 0;
  long denominator = 0;
};

/// Smallest-denominator m/p with p <= p_max and |omega - m/p| <= tol, found by a
/// Stern-Brocot (Farey mediant) descent. omega is taken mod 1.
RationalVerdict rational_detect(double omega, long p_max, double tol);

/// Convergents N_j / L_j of the continued fraction of omega in (0, 1).
/// Terminates early for rational omega.
std::vector<std::pair<long, long>> continued_fraction_convergents(double omega, std::size_t count);

/// hat a_t = (a_{pt}, ..., a_{pt+p-1}); length floor(N/p), dimension pD.
Trajectory stack_signal(const Trajectory& traj, std::size_t p);

/// Inverse of stack_signal on the retained prefix.
Trajectory unstack_signal(const Trajectory& stacked, std::size_t p);

/// omega mod 1 folded into [0, 1/2].
double fold_rotation(double omega);

}  // namespace brre
