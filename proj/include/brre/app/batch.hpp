#pragma once

// Seed-level batch runs. Seeds are distributed over OpenMP workers with a
// dynamic schedule; results are buffered and returned in seed order.

#include <optional>
#include <string>
#include <vector>

#include "brre/app/config.hpp"
#include "brre/execution.hpp"
#include "brre/fourier.hpp"

namespace brre::app {

struct ResultRow {
  Seed seed{};
  TrajectoryClass tag = TrajectoryClass::Indeterminate;
  int period = 0;
  double rotation = 0.0;
  double R = 0.0;
  double R_G = 0.0;
  double R_p = 0.0;  ///< NaN when no circle was validated
  std::size_t K = 0;
  std::size_t N = 0;  ///< map evaluations: samples drawn - 1
  std::vector<std::string> flags;
  bool failed = false;  ///< an unexpected error was recorded in `flags`
  std::optional<FourierCircle> circle;
};

std::string flags_cell(const ResultRow& row);

ResultRow classify_seed(const RunConfig& config, const Seed& seed);

/// Serial and Parallel produce identical rows.
std::vector<ResultRow> classify_batch(const RunConfig& config, Execution exec);

struct ConvergeRow {
  Seed seed{};
  std::size_t K = 0;
  std::size_t T = 0;
  std::size_t N = 0;  ///< map evaluations, (2 + gamma) K for both methods
  double R_rre = 0.0;
  double R_wba = 0.0;
  std::string flags;
};

/// Sweeps K at fixed gamma with T = gamma K and compares both residuals at equal N.
std::vector<ConvergeRow> converge_seed(const RunConfig& config, const Seed& seed);
std::vector<ConvergeRow> converge_batch(const RunConfig& config, Execution exec);

struct AverageRow {
  Seed seed{};
  std::size_t N = 0;
  RealVector weighted;
  RealVector plain;
  double R_wba = 0.0;
  std::string flags;
};

AverageRow average_seed(const RunConfig& config, const Seed& seed);
std::vector<AverageRow> average_batch(const RunConfig& config, Execution exec);

/// Runs f(i) for i in [0, n), on OpenMP workers when exec is Parallel.
/// `workers` <= 0 keeps the OpenMP default.
template <class F>
void for_each_seed(std::size_t n, Execution exec, int workers, F&& f);

}  // namespace brre::app

#include <omp.h>

template <class F>
void brre::app::for_each_seed(std::size_t n, Execution exec, int workers, F&& f) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}
