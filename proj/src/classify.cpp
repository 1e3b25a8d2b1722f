#include "brre/classify.hpp"

#include <cmath>
#include <numbers>

#include "brre/errors.hpp"

namespace brre {

const char* to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::Chaotic:
      return "chaotic";
    case TrajectoryClass::Integrable:
      return "integrable";
    case TrajectoryClass::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

namespace {

// Drops symmetric outer taps until the leading Chebyshev coefficient is usable.
RootSet filter_roots(RealVector c) {
  for (;;) {
    try {
      return palindromic_roots(c);
    } catch (const DegreeDeflation&) {
      if (c.size() <= 3) throw;
      c = c.segment(1, c.size() - 2).eval();
    }
  }
}

bool near_real_axis(double omega) {
  const double x = std::cos(2.0 * std::numbers::pi * omega);
  return std::abs(x - 1.0) < 1e-7 || std::abs(x + 1.0) < 1e-7;
}

}  // namespace

ModeRanking rank_filter_modes(const FilterSolution& solution, const Trajectory& traj,
                              const ClassifyParams& params, Execution exec, bool* rank_deficient) {
  RootSet roots = unit_circle_filter(filter_roots(solution.coefficients), params.unit_circle_tol);
  roots.roots.emplace_back(1.0, 0.0);
  roots.low_confidence.push_back(false);
  const ModeRanking raw = mode_prominence(roots, traj, exec);
  if (rank_deficient != nullptr) *rank_deficient = raw.rank_deficient;
  ModeRanking merged = merge_conjugate_modes(raw, params.unit_circle_tol);
  std::erase_if(merged.entries, [&](const ModeEntry& e) { return e.frequency <= params.unit_circle_tol; });
  return merged;
}

Classification classify_source(TrajectorySource& source, const ClassifyParams& params,
                               Execution exec) {
  Classification out;
  AdaptiveResult ar;
  try {
    ar = adaptive_solve(source, params.adaptive, exec);
  } catch (const AdaptiveInterrupted& e) {
    try {
      std::rethrow_exception(e.cause());
    } catch (const OrbitEscape&) {
      out.tag = TrajectoryClass::Chaotic;
      out.escaped = true;
      out.history = e.history();
      out.samples_drawn = source.samples_drawn();
      out.note = e.what();
      return out;
    } catch (...) {
    }
    throw;
  }
  out.solution = ar.solution;
  out.trajectory = ar.trajectory;
  out.history = ar.history;
  out.samples_drawn = source.samples_drawn();

  const double statistic = params.chaos_statistic == ChaosStatistic::ScaleFree
                               ? out.solution.scale_free_residual
                               : out.solution.residual;
  if (statistic > params.delta_chaos) {
    out.tag = TrajectoryClass::Chaotic;
    return out;
  }
  if (out.solution.fixed_point) {
    out.tag = TrajectoryClass::Integrable;
    out.period = 1;
    out.rotation = 0.0;
    out.fit_signal = out.trajectory;
    out.note = "fixed point";
    return out;
  }

  bool deficient = false;
  out.ranking = rank_filter_modes(out.solution, out.trajectory, params, exec, &deficient);
  out.rank_deficient = deficient;
  if (out.ranking.entries.empty()) {
    out.tag = TrajectoryClass::Indeterminate;
    out.note = "no filter roots on the unit circle";
    return out;
  }

  long period = 1;
  const std::size_t scan = std::min(params.top_modes, out.ranking.entries.size());
  for (std::size_t i = 0; i < scan; ++i) {
    const auto& entry = out.ranking.entries[i];
    // Near z = -1 the frequency is only accurate to the square root of the
    // root error, so the half-period test is made on x = Re z instead.
    const auto v = 1.0 + entry.root.real() <= params.rational_tol
                       ? RationalVerdict{true, 1, 2}
                       : rational_detect(entry.frequency, params.p_max, params.rational_tol);
    if (v.is_rational && v.denominator >= 2 && v.denominator > period) {
      period = v.denominator;
      out.island_frequency = v;
    }
  }

  if (period == 1) {
    out.tag = TrajectoryClass::Integrable;
    out.period = 1;
    out.rotation = out.ranking.entries.front().frequency;
    out.low_confidence_rotation = near_real_axis(out.rotation);
    out.fit_signal = out.trajectory;
    return out;
  }

  const auto p = static_cast<std::size_t>(period);
  Trajectory stacked = stack_signal(out.trajectory, p);
  const std::size_t K_hat = std::max<std::size_t>(1, out.solution.K / p);
  if (stacked.size() < 2 * K_hat + 2) {
    out.tag = TrajectoryClass::Indeterminate;
    out.note = "stacked signal too short for period " + std::to_string(period);
    return out;
  }
  const std::size_t T_hat = stacked.size() - 2 * K_hat - 1;
  if (T_hat * static_cast<std::size_t>(stacked.dim()) < K_hat) {
    out.tag = TrajectoryClass::Indeterminate;
    out.note = "stacked system is underdetermined";
    return out;
  }
  out.stacked_solution = rre_solve(stacked, K_hat, T_hat, params.adaptive.epsilon, exec);
  out.stacked_ranking = rank_filter_modes(*out.stacked_solution, stacked, params, exec, &deficient);
  out.rank_deficient = out.rank_deficient || deficient;
  if (out.stacked_ranking.entries.empty()) {
    out.tag = TrajectoryClass::Indeterminate;
    out.note = "no unit-circle roots after stacking";
    return out;
  }
  const auto& top = out.stacked_ranking.entries.front();
  const auto after = rational_detect(top.frequency, params.p_max, params.rational_tol);
  if (after.is_rational) out.stacked_rational = after;
  out.tag = TrajectoryClass::Integrable;
  out.period = period;
  out.rotation = top.frequency;
  out.low_confidence_rotation = near_real_axis(out.rotation);
  out.fit_signal = std::move(stacked);
  return out;
}

Classification classify_trajectory(std::shared_ptr<const DynamicalMap> map,
                                   std::shared_ptr<const Observable> obs, const MapPoint& x0,
                                   const ClassifyParams& params, const SamplingOptions& sampling,
                                   Execution exec) {
  OrbitCache cache(std::move(map), std::move(obs), x0, sampling);
  return classify_source(cache, params, exec);
}

}  // namespace brre
