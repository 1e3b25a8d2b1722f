#pragma once

// Full trajectory classification: adaptive filter solve, chaos test, root
// ranking, island detection with one stacking pass, and rotation extraction.

#include <optional>
#include <string>

#include "brre/rre.hpp"
#include "brre/spectral.hpp"

namespace brre {

enum class TrajectoryClass { Chaotic, Integrable, Indeterminate };

const char* to_string(TrajectoryClass c);

/// Which residual is compared against delta_chaos.
enum class ChaosStatistic { ScaleFree, Raw };

struct ClassifyParams {
  AdaptiveOptions adaptive;
  double delta_chaos = 1e-9;
  ChaosStatistic chaos_statistic = ChaosStatistic::ScaleFree;
  double unit_circle_tol = 1e-7;
  double rational_tol = 1e-8;
  long p_max = 50;
  std::size_t top_modes = 10;
};

struct Classification {
  TrajectoryClass tag = TrajectoryClass::Indeterminate;
  int period = 0;          ///< island period p; 0 unless Integrable
  double rotation = 0.0;   ///< in [0, 1/2]; meaningful only for Integrable
  std::optional<RationalVerdict> island_frequency;  ///< the rational mode that set p

  FilterSolution solution;
  ModeRanking ranking;  ///< merged ranking of the unstacked signal
  Trajectory trajectory;  ///< samples behind `solution`
  std::vector<AdaptiveStep> history;

  std::optional<FilterSolution> stacked_solution;
  ModeRanking stacked_ranking;
  /// Signal the rotation was read from: `trajectory` or its p-stacked version.
  Trajectory fit_signal;

  bool escaped = false;
  bool rank_deficient = false;
  bool low_confidence_rotation = false;
  /// Rational top mode seen after stacking; reported only.
  std::optional<RationalVerdict> stacked_rational;
  std::size_t samples_drawn = 0;
  std::string note;
};

/// Roots, unit-circle filter and merged prominence ranking for one filter.
/// The constant mode (root 1) is always included in the fit and removed from the result.
ModeRanking rank_filter_modes(const FilterSolution& solution, const Trajectory& traj,
                              const ClassifyParams& params, Execution exec,
                              bool* rank_deficient = nullptr);

/// Classifies the orbit served by `source`. Orbit escape yields Chaotic with `escaped` set.
Classification classify_source(TrajectorySource& source, const ClassifyParams& params,
                               Execution exec = Execution::Serial);

Classification classify_trajectory(std::shared_ptr<const DynamicalMap> map,
                                   std::shared_ptr<const Observable> obs, const MapPoint& x0,
                                   const ClassifyParams& params,
                                   const SamplingOptions& sampling = {},
                                   Execution exec = Execution::Serial);

}  // namespace brre
