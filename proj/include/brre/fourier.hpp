#pragma once

// Fourier parameterization of invariant circles and island chains.

#include <cstddef>

#include "brre/maps.hpp"

namespace brre {

/// Coefficients of z^(j)(theta) = sum_{l=-L}^{L} V_l e^{2 pi i l theta}, one D-column
/// block per island component. Row l + L holds mode l.
struct FourierCircle {
  int period = 1;
  double rotation = 0.0;
  int L = 0;
  int D = 0;
  ComplexMatrix coefficients;  ///< (2L+1) x (period * D)
  double residual = 0.0;        ///< weighted RMS of the projection
  double condition_estimate = 1.0;
  bool ill_conditioned = false;  ///< condition estimate above 1e8
};

/// eta_n = sum_{t=0}^{T} w_{t,T+1} e^{2 pi i omega n t}.
ComplexScalar mode_overlap(std::size_t T, double omega, long n);

/// gamma_L = sum_{n=1}^{2L} |eta_n|.
double overlap_radius(std::size_t T, double omega, int L);

/// Largest L (capped at ceil((T-1)/2)) with gamma_L < gamma_max.
int choose_num_modes(std::size_t T, double omega, double gamma_max = 0.5);

/// Gershgorin bound sqrt((1 + 2 gamma) / (1 - 2 gamma)) on the projection condition number.
double condition_bound(double gamma_L);

/// Weighted least-squares projection of a (stacked) signal onto modes e^{2 pi i omega l t}.
FourierCircle project_circle(const Trajectory& signal, double omega, int L, int period);

/// Real part of z^(j)(theta), j in 1..period. The discarded imaginary part's
/// magnitude is written to `imaginary_residue` when given.
RealVector eval_circle(const FourierCircle& circle, int j, double theta,
                       double* imaginary_residue = nullptr);

struct ValidationResult {
  double residual = 0.0;  ///< R_p
  /// True when the check ran in observable coordinates through obs o F o obs^{-1}
  /// rather than directly in state space.
  bool observable_space = false;
};

/// Discretized L2 defect of the island conjugacy on J equispaced angles.
/// `obs` must provide an inverse on the circle's image.
ValidationResult validation_residual(const FourierCircle& circle, const DynamicalMap& map,
                                     const Observable& obs, std::size_t J = 128);

}  // namespace brre
