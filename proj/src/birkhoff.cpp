#include "brre/birkhoff.hpp"

#include <cmath>
#include <string>

#include "brre/errors.hpp"

namespace brre {

double bump(double s) {
  if (!(s > 0.0 && s < 1.0)) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

namespace {
std::vector<double> normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return w;
}
}  // namespace

std::vector<double> bump_weights(std::size_t n) {
  if (n < 1) throw ContractViolation("bump_weights: n must be >= 1");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n + 1);
  for (std::size_t t = 0; t < n; ++t) w[t] = bump(static_cast<double>(t + 1) / denom);
  // Enforce exact mirror symmetry; (t+1)/(n+1) and (n-t)/(n+1) round differently.
  for (std::size_t t = 0; t < n / 2; ++t) {
    const double m = 0.5 * (w[t] + w[n - 1 - t]);
    w[t] = m;
    w[n - 1 - t] = m;
  }
  return normalized(std::move(w));
}

std::vector<double> closed_grid_bump_weights(std::size_t n) {
  if (n < 3) throw ContractViolation("closed_grid_bump_weights: n must be >= 3");
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) w[t] = bump(static_cast<double>(t) / static_cast<double>(n - 1));
  return normalized(std::move(w));
}

RealVector weighted_average(const Trajectory& traj, const std::vector<double>& weights) {
  if (weights.size() != traj.size()) {
    throw ContractViolation("weighted_average: " + std::to_string(weights.size()) +
                            " weights for a trajectory of length " + std::to_string(traj.size()));
  }
  RealVector acc = RealVector::Zero(traj.dim());
  for (std::size_t t = 0; t < traj.size(); ++t) acc += weights[t] * traj.sample(t);
  return acc;
}

RealVector unweighted_average(const Trajectory& traj) {
  return traj.samples().rowwise().mean();
}

double wba_doubling_residual(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 2 || n % 2 != 0) {
    throw ContractViolation("wba_doubling_residual: need an even length >= 2, got " +
                            std::to_string(n));
  }
  const std::size_t half = n / 2;
  const auto w = bump_weights(half);
  RealVector diff = RealVector::Zero(traj.dim());
  for (std::size_t t = 0; t < half; ++t) diff += w[t] * (traj.sample(t) - traj.sample(t + half));
  return diff.norm();
}

}  // namespace brre
