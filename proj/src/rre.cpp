#include "brre/rre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"

namespace brre {

namespace {
const double sqrt2 = std::numbers::sqrt2;
}

DifferenceSignal difference_signal(const Trajectory& traj) {
  if (traj.size() < 2) {
    throw ContractViolation("difference_signal: need at least 2 samples");
  }
  const auto n = static_cast<Eigen::Index>(traj.size());
  const RealMatrix& a = traj.samples();
  return {a.rightCols(n - 1) - a.leftCols(n - 1), traj.size()};
}

std::vector<double> symmetrized_filter_weights(std::size_t K) {
  const auto w = bump_weights(2 * K + 1);
  std::vector<double> out(2 * K + 1);
  for (std::size_t k = 0; k <= 2 * K; ++k) out[k] = 0.5 * (w[k] + w[2 * K - k]);
  return out;
}

RreProblem build_problem(const DifferenceSignal& u, std::size_t K, std::size_t T, double epsilon,
                         Execution exec) {
  if (K < 1 || T < 1) throw ContractViolation("build_problem: need K >= 1 and T >= 1");
  if (!(epsilon >= 0.0)) throw ContractViolation("build_problem: epsilon must be >= 0");
  const std::size_t needed = T + 2 * K;
  if (u.count() < needed) {
    throw ContractViolation("build_problem: need " + std::to_string(needed) +
                            " differences (trajectory length " + std::to_string(needed + 1) +
                            "), have " + std::to_string(u.count()));
  }
  const int D = u.dim();
  if (T * static_cast<std::size_t>(D) < K) {
    throw ContractViolation("build_problem: T*D = " + std::to_string(T * D) +
                            " is smaller than K = " + std::to_string(K));
  }

  RreProblem p;
  p.K = K;
  p.T = T;
  p.D = D;
  p.epsilon = epsilon;
  p.row_weights = bump_weights(T);
  p.reg_weights = symmetrized_filter_weights(K);
  p.hankel.resize(static_cast<Eigen::Index>(T) * D, static_cast<Eigen::Index>(2 * K + 1));

  const auto cols = static_cast<long>(2 * K + 1);
  auto fill_column = [&](long k) {
    for (std::size_t t = 0; t < T; ++t) {
      p.hankel.block(static_cast<Eigen::Index>(t) * D, k, D, 1) =
          u.u.col(static_cast<Eigen::Index>(t) + k);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < cols; ++k) fill_column(k);
  } else {
    for (long k = 0; k < cols; ++k) fill_column(k);
  }

  double g2 = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    g2 += p.row_weights[t] * u.u.col(static_cast<Eigen::Index>(t)).squaredNorm();
  }
  p.signal_scale_sq = g2;
  return p;
}

double filter_objective(const RreProblem& problem, const RealVector& c) {
  if (static_cast<std::size_t>(c.size()) != 2 * problem.K + 1) {
    throw ContractViolation("filter_objective: filter length does not match 2K+1");
  }
  const RealVector r = problem.hankel * c;
  double value = 0.0;
  const int D = problem.D;
  for (std::size_t t = 0; t < problem.T; ++t) {
    value += problem.row_weights[t] *
             r.segment(static_cast<Eigen::Index>(t) * D, D).squaredNorm();
  }
  if (problem.epsilon > 0.0) {
    double reg = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      const double w = problem.reg_weights[static_cast<std::size_t>(k)];
      reg += w > 0.0 ? c[k] * c[k] / w : std::numeric_limits<double>::infinity();
    }
    value += problem.epsilon * reg;
  }
  return value;
}

double scale_free_residual(double R, double epsilon, double G) {
  if (!(G > 0.0)) return 0.0;
  return std::sqrt(std::max(R * R - epsilon, 0.0)) / G;
}

FilterSolution solve_filter(const RreProblem& problem, Execution exec) {
  const std::size_t K = problem.K;
  const int D = problem.D;
  const auto K_i = static_cast<Eigen::Index>(K);
  const auto hankel_rows = static_cast<Eigen::Index>(problem.T) * D;
  const bool regularized = problem.epsilon > 0.0;
  const Eigen::Index rows = hankel_rows + (regularized ? K_i + 1 : 0);

  RealVector row_scale(hankel_rows);
  for (std::size_t t = 0; t < problem.T; ++t) {
    row_scale.segment(static_cast<Eigen::Index>(t) * D, D).setConstant(std::sqrt(problem.row_weights[t]));
  }

  // Fold to d = P c: d_0 = c_K, d_k = (c_{K+k} + c_{K-k}) / sqrt 2, so that a palindromic
  // c equals P^T d. The mean constraint becomes (1, sqrt2, ..., sqrt2) . d = 1, whose
  // solutions are d = e_0 + N xi with null-space columns n_j = sqrt2 e_0 - e_j.
  RealVector centre = row_scale.cwiseProduct(problem.hankel.col(K_i));
  RealMatrix system(rows, K_i);
  auto fill_column = [&](long j) {
    const auto jj = static_cast<Eigen::Index>(j);
    auto col = system.col(jj - 1);
    col.head(hankel_rows) =
        sqrt2 * centre -
        row_scale.cwiseProduct(problem.hankel.col(K_i + jj) + problem.hankel.col(K_i - jj)) / sqrt2;
    if (regularized) col.tail(K_i + 1).setZero();
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long j = 1; j <= static_cast<long>(K); ++j) fill_column(j);
  } else {
    for (long j = 1; j <= static_cast<long>(K); ++j) fill_column(j);
  }

  RealVector rhs(rows);
  rhs.head(hankel_rows) = -centre;
  if (regularized) {
    // eps c^T W_K^{-1} c = eps (d_0^2 / w_K + sum_k d_k^2 / w_{K+k}) for palindromic c,
    // so the regularizer folds to a (K+1)-row diagonal block.
    RealVector reg(K_i + 1);
    for (std::size_t k = 0; k <= K; ++k) {
      const double w = problem.reg_weights[K + k];
      reg[static_cast<Eigen::Index>(k)] = w > 0.0 ? std::sqrt(problem.epsilon / w) : 0.0;
    }
    for (Eigen::Index j = 1; j <= K_i; ++j) {
      system(hankel_rows, j - 1) = sqrt2 * reg[0];
      system(hankel_rows + j, j - 1) = -reg[j];
    }
    rhs.tail(K_i + 1).setZero();
    rhs[hankel_rows] = -reg[0];
  }

  RealVector xi;
  if (regularized) {
    // Outer taps carry sqrt(eps / w) with w near the bump's essential zero, so the
    // columns span many orders of magnitude. The regularized system has full rank,
    // so equilibrating the columns leaves the minimizer unchanged.
    RealVector col_scale = system.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < K_i; ++j) {
      if (!(col_scale[j] > 0.0)) col_scale[j] = 1.0;
    }
    // A tap whose weight underflowed to zero carries an infinite penalty: pin it to 0.
    std::vector<Eigen::Index> free;
    for (Eigen::Index j = 1; j <= K_i; ++j) {
      if (problem.reg_weights[K + static_cast<std::size_t>(j)] > 0.0) free.push_back(j - 1);
    }
    RealMatrix scaled(rows, static_cast<Eigen::Index>(free.size()));
    for (std::size_t i = 0; i < free.size(); ++i) {
      scaled.col(static_cast<Eigen::Index>(i)) = system.col(free[i]) / col_scale[free[i]];
    }
    const RealVector part = least_squares_solve(scaled, rhs);
    xi = RealVector::Zero(K_i);
    for (std::size_t i = 0; i < free.size(); ++i) {
      xi[free[i]] = part[static_cast<Eigen::Index>(i)] / col_scale[free[i]];
    }
  } else {
    xi = least_squares_solve(system, rhs);
  }

  FilterSolution sol;
  sol.K = K;
  sol.T = problem.T;
  sol.epsilon = problem.epsilon;
  sol.coefficients.resize(static_cast<Eigen::Index>(2 * K + 1));
  sol.coefficients[K_i] = 1.0 + sqrt2 * xi.sum();
  for (Eigen::Index j = 1; j <= K_i; ++j) {
    const double v = -xi[j - 1] / sqrt2;
    sol.coefficients[K_i + j] = v;
    sol.coefficients[K_i - j] = v;
  }
  const double r2 = filter_objective(problem, sol.coefficients);
  sol.residual = std::sqrt(std::max(r2, 0.0));
  sol.signal_scale = std::sqrt(problem.signal_scale_sq);
  sol.fixed_point = !(sol.signal_scale > 0.0);
  sol.scale_free_residual = scale_free_residual(sol.residual, problem.epsilon, sol.signal_scale);
  return sol;
}

FilterSolution rre_solve(const Trajectory& traj, std::size_t K, std::size_t T, double epsilon,
                         Execution exec) {
  const std::size_t n = T + 2 * K + 1;
  if (traj.size() < n) {
    throw ContractViolation("rre_solve: need " + std::to_string(n) + " samples, have " +
                            std::to_string(traj.size()));
  }
  const auto u = difference_signal(traj.prefix(n));
  return solve_filter(build_problem(u, K, T, epsilon, exec), exec);
}

std::size_t window_count(double gamma, std::size_t K, int D) {
  return static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(K) / D - 1e-12));
}

AdaptiveResult adaptive_solve(TrajectorySource& source, const AdaptiveOptions& options,
                              Execution exec) {
  if (options.K_init < 1 || options.K_init > options.K_max) {
    throw ContractViolation("adaptive_solve: need 1 <= K_init <= K_max");
  }
  if (options.K_step < 1) throw ContractViolation("adaptive_solve: K_step must be >= 1");
  if (!(options.gamma >= 1.0)) throw ContractViolation("adaptive_solve: gamma must be >= 1");

  const int D = source.dim();
  AdaptiveResult result;
  for (std::size_t K = options.K_init; K <= options.K_max; K += options.K_step) {
    const std::size_t T = window_count(options.gamma, K, D);
    Trajectory traj;
    try {
      traj = source.take(T + 2 * K + 1);
    } catch (const std::exception& e) {
      throw AdaptiveInterrupted(std::string("adaptive_solve: trajectory source failed at K = ") +
                                    std::to_string(K) + ": " + e.what(),
                                result.history, std::current_exception());
    }
    const auto u = difference_signal(traj);
    result.solution = solve_filter(build_problem(u, K, T, options.epsilon, exec), exec);
    result.trajectory = std::move(traj);
    result.history.push_back(
        {K, T, result.solution.residual, result.solution.scale_free_residual});
    if (result.solution.scale_free_residual <= options.delta) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace brre
