#pragma once

// Birkhoff reduced rank extrapolation: learn a palindromic, mean-one filter
// that annihilates the differenced signal in a weighted least-squares sense.

#include <cstddef>
#include <exception>
#include <string>
#include <vector>

#include "brre/execution.hpp"
#include "brre/maps.hpp"

namespace brre {

/// u_t = a_{t+1} - a_t, one difference per column (D x (N-1)).
struct DifferenceSignal {
  RealMatrix u;
  std::size_t trajectory_length = 0;

  int dim() const { return static_cast<int>(u.rows()); }
  std::size_t count() const { return static_cast<std::size_t>(u.cols()); }
};

DifferenceSignal difference_signal(const Trajectory& traj);

/// Blocks of the constrained least-squares system.
struct RreProblem {
  std::size_t K = 0;  ///< half filter length; the filter has 2K+1 taps
  std::size_t T = 0;  ///< number of Hankel row blocks
  int D = 0;
  double epsilon = 0.0;
  /// Block-Hankel matrix, (T*D) x (2K+1); row block t is (u_t, ..., u_{t+2K}).
  RealMatrix hankel;
  /// w_{t,T}, applied to every row of block t.
  std::vector<double> row_weights;
  /// Symmetrized regularization weights, length 2K+1.
  std::vector<double> reg_weights;
  /// G^2 = sum_t w_{t,T} |u_t|^2.
  double signal_scale_sq = 0.0;
};

/// Symmetrization of bump_weights(2K+1) about the centre index K.
std::vector<double> symmetrized_filter_weights(std::size_t K);

RreProblem build_problem(const DifferenceSignal& u, std::size_t K, std::size_t T, double epsilon,
                         Execution exec = Execution::Serial);

struct FilterSolution {
  RealVector coefficients;  ///< c_0..c_{2K}
  double residual = 0.0;    ///< R
  double scale_free_residual = 0.0;  ///< R_G
  double signal_scale = 0.0;         ///< G
  std::size_t K = 0;
  std::size_t T = 0;
  double epsilon = 0.0;
  bool fixed_point = false;  ///< G == 0
};

/// |W_T^{1/2} U c|^2 + eps c^T W_K^{-1} c for an arbitrary filter c.
double filter_objective(const RreProblem& problem, const RealVector& c);

/// Minimizes filter_objective subject to sum(c) = 1 and c_{K+k} = c_{K-k}.
FilterSolution solve_filter(const RreProblem& problem, Execution exec = Execution::Serial);

/// sqrt(max(R^2 - eps, 0)) / G, or 0 when G == 0.
double scale_free_residual(double R, double epsilon, double G);

/// One fixed-size solve on the first T + 2K + 1 samples of a trajectory.
FilterSolution rre_solve(const Trajectory& traj, std::size_t K, std::size_t T, double epsilon,
                         Execution exec = Execution::Serial);

struct AdaptiveOptions {
  double gamma = 3.0;
  double epsilon = 0.0;
  double delta = 1e-10;
  std::size_t K_init = 50;
  std::size_t K_max = 600;
  std::size_t K_step = 50;
};

/// T = ceil(gamma K / D).
std::size_t window_count(double gamma, std::size_t K, int D);

struct AdaptiveStep {
  std::size_t K = 0;
  std::size_t T = 0;
  double residual = 0.0;
  double scale_free_residual = 0.0;
};

struct AdaptiveResult {
  FilterSolution solution;
  Trajectory trajectory;  ///< the T + 2K + 1 samples behind `solution`
  std::vector<AdaptiveStep> history;
  bool converged = false;  ///< final R_G <= delta
};

/// The adaptive driver stopped because its trajectory source failed.
class AdaptiveInterrupted : public std::runtime_error {
public:
  AdaptiveInterrupted(const std::string& what, std::vector<AdaptiveStep> history,
                      std::exception_ptr cause)
      : std::runtime_error(what), history_(std::move(history)), cause_(std::move(cause)) {}
  const std::vector<AdaptiveStep>& history() const { return history_; }
  std::exception_ptr cause() const { return cause_; }

private:
  std::vector<AdaptiveStep> history_;
  std::exception_ptr cause_;
};

/// Grows K from K_init by K_step until R_G <= delta or K > K_max, extending
/// the orbit held by `source` rather than resampling.
AdaptiveResult adaptive_solve(TrajectorySource& source, const AdaptiveOptions& options,
                              Execution exec = Execution::Serial);

}  // namespace brre
