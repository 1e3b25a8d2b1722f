#pragma once

// Reference filter constructions that do not go through the least-squares
// solve. Tests use them as independent checks on the learned filters.

#include <cstddef>
#include <vector>

#include "brre/maps.hpp"

namespace brre {

enum class ReferenceKind { Tuned, ReferencePolynomial, AllOnes, Wba };

struct ReferenceFilter {
  RealVector coefficients;  ///< c_0..c_{n-1}, q(z) = sum c_k z^k
  ReferenceKind kind = ReferenceKind::Tuned;
};

/// Expands prod_k (z - r_k) / (1 - r_k) over the given roots and rescales so q(1) = 1.
/// Throws DegenerateFrequency when some |1 - r_k| is below 1e-12.
RealVector normalized_product(const std::vector<ComplexScalar>& roots);

/// Length-n filter (n odd, >= 3) with roots e^{+-2 pi i omega k}, k = 1..floor(n/2).
ReferenceFilter tuned_filter(double omega, std::size_t n);

/// q_{alpha,n}: exact roots lambda_{+-j} for j <= floor(alpha p L_n), and
/// root-of-unity surrogates mu_{+-j} from the convergent N_n/L_n up to floor(p L_n / 2).
ReferenceFilter reference_polynomial(double omega, int p, double alpha, std::size_t convergent);

ReferenceFilter all_ones_filter(std::size_t n);

/// Evaluates q(z) = sum_k c_k z^k by Horner's rule.
ComplexScalar evaluate_filter(const RealVector& c, ComplexScalar z);

/// Applies a filter to consecutive windows: sum_k c_k a_{t+k}.
RealVector apply_filter(const RealVector& c, const Trajectory& traj, std::size_t start = 0);

/// Weighted Birkhoff average of a_t e^{-2 pi i n omega t} over the first N samples.
ComplexVector brute_force_fourier_coefficient(const Trajectory& traj, double omega, long n,
                                              std::size_t N);

}  // namespace brre
