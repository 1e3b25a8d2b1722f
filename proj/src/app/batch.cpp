#include "brre/app/batch.hpp"

#include <cmath>
#include <limits>

#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"

namespace brre::app {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

MapPoint state_of(const Seed& seed) {
  MapPoint x(2);
  x << seed[0], seed[1];
  return x;
}

// Flags end up in a CSV cell, so keep them free of separators.
std::string flag_text(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == ';' || ch == '\n' || ch == '"') ch = ' ';
  }
  return s;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ';';
    out += p;
  }
  return out;
}

void fit_circle(const RunConfig& config, const Classification& c, ResultRow& row,
                const DynamicalMap& map, const Observable& obs) {
  const Trajectory& signal = c.fit_signal;
  if (signal.size() < 2) return;
  int L = choose_num_modes(signal.size() - 1, c.rotation, config.gamma_max);
  L = std::min<int>(L, static_cast<int>((signal.size() - 1) / 2));
  FourierCircle circle = project_circle(signal, c.rotation, L, c.period);
  if (circle.ill_conditioned) row.flags.emplace_back("ill_conditioned");
  try {
    const auto v = validation_residual(circle, map, obs, config.validation_points);
    row.R_p = v.residual;
    if (v.observable_space) row.flags.emplace_back("observable_space_validation");
    if (!(v.residual < 1e-2)) row.flags.emplace_back("weak_validation");
  } catch (const ValidationFailure& e) {
    row.flags.emplace_back("validation_failed");
  }
  row.circle = std::move(circle);
}

}  // namespace

ResultRow classify_seed(const RunConfig& config, const Seed& seed) {
  ResultRow row;
  row.seed = seed;
  row.R = row.R_G = row.R_p = nan;
  try {
    const auto map = make_map(config);
    const auto obs = make_observable(config);
    SamplingOptions sampling;
    sampling.escape_bound = config.escape_bound;
    OrbitCache cache(map, obs, state_of(seed), sampling);
    const Classification c = classify_source(cache, config.classify, Execution::Serial);

    row.tag = c.tag;
    row.period = c.period;
    row.rotation = c.tag == TrajectoryClass::Integrable ? c.rotation : nan;
    row.N = cache.map_evaluations();
    if (c.escaped) {
      row.flags.emplace_back("escaped");
      if (!c.history.empty()) row.K = c.history.back().K;
    } else {
      row.R = c.solution.residual;
      row.R_G = c.solution.scale_free_residual;
      row.K = c.solution.K;
      if (c.solution.scale_free_residual > config.classify.adaptive.delta) {
        row.flags.emplace_back("not_converged");
      }
    }
    if (c.solution.fixed_point) row.flags.emplace_back("fixed_point");
    if (c.rank_deficient) row.flags.emplace_back("rank_deficient");
    if (c.low_confidence_rotation) row.flags.emplace_back("low_confidence_rotation");
    if (c.stacked_solution) row.flags.emplace_back("stacked");
    if (c.stacked_rational) {
      row.flags.emplace_back("stacked_rational_" + std::to_string(c.stacked_rational->numerator) +
                             "/" + std::to_string(c.stacked_rational->denominator));
    }
    if (c.tag == TrajectoryClass::Indeterminate) row.flags.push_back(flag_text(c.note));
    if (c.tag == TrajectoryClass::Integrable) fit_circle(config, c, row, *map, *obs);
  } catch (const std::exception& e) {
    row.failed = true;
    row.tag = TrajectoryClass::Indeterminate;
    row.flags.push_back("error: " + flag_text(e.what()));
  }
  return row;
}

std::vector<ResultRow> classify_batch(const RunConfig& config, Execution exec) {
  std::vector<ResultRow> rows(config.seeds.size());
  for_each_seed(rows.size(), exec, config.workers,
                [&](std::size_t i) { rows[i] = classify_seed(config, config.seeds[i]); });
  return rows;
}

std::vector<ConvergeRow> converge_seed(const RunConfig& config, const Seed& seed) {
  std::vector<ConvergeRow> out;
  const double gamma = config.converge_gamma;
  auto T_of = [&](std::size_t K) {
    return static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(K)));
  };
  std::size_t K_last = config.converge_K_start;
  for (std::size_t K = config.converge_K_start; K <= config.converge_K_stop; K += config.converge_K_step) {
    K_last = K;
  }

  Trajectory full;
  std::string failure;
  try {
    SamplingOptions sampling;
    sampling.escape_bound = config.escape_bound;
    OrbitCache cache(make_map(config), make_observable(config), state_of(seed), sampling);
    try {
      full = cache.take(T_of(K_last) + 2 * K_last + 1);
    } catch (const OrbitEscape&) {
      failure = "escaped";
      full = cache.take(cache.samples_drawn());
    }
  } catch (const std::exception& e) {
    failure = "error: " + flag_text(e.what());
  }

  for (std::size_t K = config.converge_K_start; K <= config.converge_K_stop; K += config.converge_K_step) {
    ConvergeRow row;
    row.seed = seed;
    row.K = K;
    row.T = T_of(K);
    const std::size_t samples = row.T + 2 * K + 1;
    row.N = samples - 1;
    row.R_rre = row.R_wba = nan;
    if (full.size() < samples) {
      row.flags = failure.empty() ? "insufficient_samples" : failure;
      out.push_back(row);
      continue;
    }
    try {
      const Trajectory traj = full.prefix(samples);
      row.R_rre = rre_solve(traj, K, row.T, config.classify.adaptive.epsilon).residual;
      row.R_wba = wba_doubling_residual(traj.prefix(samples - samples % 2));
    } catch (const std::exception& e) {
      row.flags = "error: " + flag_text(e.what());
    }
    out.push_back(row);
  }
  return out;
}

std::vector<ConvergeRow> converge_batch(const RunConfig& config, Execution exec) {
  std::vector<std::vector<ConvergeRow>> per_seed(config.seeds.size());
  for_each_seed(per_seed.size(), exec, config.workers,
                [&](std::size_t i) { per_seed[i] = converge_seed(config, config.seeds[i]); });
  std::vector<ConvergeRow> rows;
  for (auto& block : per_seed) rows.insert(rows.end(), block.begin(), block.end());
  return rows;
}

AverageRow average_seed(const RunConfig& config, const Seed& seed) {
  AverageRow row;
  row.seed = seed;
  row.N = config.average_length - 1;
  row.R_wba = nan;
  try {
    SamplingOptions sampling;
    sampling.escape_bound = config.escape_bound;
    const auto map = make_map(config);
    const auto obs = make_observable(config);
    const Trajectory traj = sample_trajectory(*map, *obs, state_of(seed), config.average_length, sampling);
    row.weighted = weighted_average(traj, bump_weights(traj.size()));
    row.plain = unweighted_average(traj);
    row.R_wba = wba_doubling_residual(traj.prefix(traj.size() - traj.size() % 2));
  } catch (const OrbitEscape&) {
    row.flags = "escaped";
  } catch (const std::exception& e) {
    row.flags = "error: " + flag_text(e.what());
  }
  return row;
}

std::vector<AverageRow> average_batch(const RunConfig& config, Execution exec) {
  std::vector<AverageRow> rows(config.seeds.size());
  for_each_seed(rows.size(), exec, config.workers,
                [&](std::size_t i) { rows[i] = average_seed(config, config.seeds[i]); });
  return rows;
}

std::string flags_cell(const ResultRow& row) { return join(row.flags); }

}  // namespace brre::app
