#pragma once

// Smooth-bump weights and (weighted) Birkhoff averages.

#include <cstddef>
#include <vector>

#include "brre/maps.hpp"

namespace brre {

/// The C-infinity bump exp(-1/(s(1-s))) on (0, 1); zero outside.
double bump(double s);

/// w_{t,n} proportional to bump((t+1)/(n+1)), normalized by the sample sum.
/// Positive, symmetric, sums to one.
std::vector<double> bump_weights(std::size_t n);

/// Same bump sampled on the closed grid s = t/(n-1); both end weights vanish.
std::vector<double> closed_grid_bump_weights(std::size_t n);

/// sum_t w_t a_t.
RealVector weighted_average(const Trajectory& traj, const std::vector<double>& weights);

RealVector unweighted_average(const Trajectory& traj);

/// |WBA_T(a_0..a_{T-1}) - WBA_T(a_T..a_{2T-1})| for a trajectory of length 2T.
double wba_doubling_residual(const Trajectory& traj);

}  // namespace brre
