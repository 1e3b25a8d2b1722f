#include "brre/fourier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"

namespace brre {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

ComplexScalar overlap(const std::vector<double>& w, double omega, long n) {
  ComplexScalar acc = 0.0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    // Reduce the phase mod 1 before scaling to keep it accurate for large n t.
    const double phase = wrap_unit(omega * static_cast<double>(n) * static_cast<double>(t));
    acc += w[t] * std::polar(1.0, two_pi * phase);
  }
  return acc;
}
}  // namespace

ComplexScalar mode_overlap(std::size_t T, double omega, long n) {
  return overlap(bump_weights(T + 1), omega, n);
}

double overlap_radius(std::size_t T, double omega, int L) {
  const auto w = bump_weights(T + 1);
  double gamma = 0.0;
  for (long n = 1; n <= 2L * L; ++n) gamma += std::abs(overlap(w, omega, n));
  return gamma;
}

int choose_num_modes(std::size_t T, double omega, double gamma_max) {
  if (!(gamma_max > 0.0 && gamma_max <= 0.5)) {
    throw ContractViolation("choose_num_modes: gamma_max must lie in (0, 1/2]");
  }
  if (T < 2) throw ContractViolation("choose_num_modes: T must be >= 2");
  const int cap = static_cast<int>((T - 1 + 1) / 2);  // ceil((T-1)/2)
  const auto w = bump_weights(T + 1);
  auto eta_abs = [&](long n) { return std::abs(overlap(w, omega, n)); };
  // gamma_L grows by |eta_{2L-1}| + |eta_{2L}| per step.
  double gamma = 0.0;
  int L = 0;
  while (L < cap) {
    const double next = gamma + eta_abs(2L * L + 1) + eta_abs(2L * L + 2);
    if (!(next < gamma_max)) break;
    gamma = next;
    ++L;
  }
  return L;
}

double condition_bound(double gamma_L) {
  if (!(2.0 * gamma_L < 1.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt((1.0 + 2.0 * gamma_L) / (1.0 - 2.0 * gamma_L));
}

FourierCircle project_circle(const Trajectory& signal, double omega, int L, int period) {
  if (L < 0 || period < 1) throw ContractViolation("project_circle: need L >= 0 and period >= 1");
  if (signal.dim() % period != 0) {
    throw ContractViolation("project_circle: signal dimension is not a multiple of the period");
  }
  const std::size_t n = signal.size();
  const auto modes = static_cast<Eigen::Index>(2 * L + 1);
  if (static_cast<std::size_t>(modes) > n) {
    throw ContractViolation("project_circle: 2L+1 = " + std::to_string(modes) +
                            " exceeds the signal length " + std::to_string(n));
  }
  const auto w = bump_weights(n);
  const auto rows = static_cast<Eigen::Index>(n);
  RealVector sqrt_w(rows);
  for (Eigen::Index t = 0; t < rows; ++t) sqrt_w[t] = std::sqrt(w[static_cast<std::size_t>(t)]);

  ComplexMatrix basis(rows, modes);
  for (Eigen::Index j = 0; j < modes; ++j) {
    const double l = static_cast<double>(j - L);
    for (Eigen::Index t = 0; t < rows; ++t) {
      const double phase = wrap_unit(omega * l * static_cast<double>(t));
      basis(t, j) = sqrt_w[t] * std::polar(1.0, two_pi * phase);
    }
  }
  const ComplexMatrix rhs =
      (sqrt_w.asDiagonal() * signal.samples().transpose()).cast<ComplexScalar>();

  FourierCircle circle;
  circle.period = period;
  circle.rotation = omega;
  circle.L = L;
  circle.D = signal.dim() / period;
  circle.coefficients = complex_least_squares_solve(basis, rhs);
  circle.residual = (basis * circle.coefficients - rhs).norm();

  // Gram matrix eigenvalues give the 2-norm condition number of the weighted basis.
  const ComplexMatrix gram = basis.adjoint() * basis;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = std::max(eig.eigenvalues().minCoeff(), 0.0);
  const double hi = eig.eigenvalues().maxCoeff();
  circle.condition_estimate = lo > 0.0 ? std::sqrt(hi / lo) : std::numeric_limits<double>::infinity();
  circle.ill_conditioned = circle.condition_estimate > 1e8;
  return circle;
}

RealVector eval_circle(const FourierCircle& circle, int j, double theta, double* imaginary_residue) {
  if (j < 1 || j > circle.period) {
    throw ContractViolation("eval_circle: island index " + std::to_string(j) + " outside 1.." +
                            std::to_string(circle.period));
  }
  ComplexVector acc = ComplexVector::Zero(circle.D);
  const auto block = circle.coefficients.middleCols(static_cast<Eigen::Index>(j - 1) * circle.D, circle.D);
  for (int l = -circle.L; l <= circle.L; ++l) {
    const ComplexScalar e = std::polar(1.0, two_pi * wrap_unit(l * theta));
    acc += e * block.row(l + circle.L).transpose();
  }
  if (imaginary_residue != nullptr) *imaginary_residue = acc.imag().cwiseAbs().maxCoeff();
  return acc.real();
}

ValidationResult validation_residual(const FourierCircle& circle, const DynamicalMap& map,
                                     const Observable& obs, std::size_t J) {
  if (J < 8) throw ContractViolation("validation_residual: J must be >= 8");
  if (obs.output_dimension() != circle.D) {
    throw ContractViolation("validation_residual: observable dimension does not match the circle");
  }
  const bool identity = dynamic_cast<const IdentityObservable*>(&obs) != nullptr;

  auto push = [&](const RealVector& v) -> RealVector {
    const auto state = obs.invert(v);
    if (!state) throw ValidationFailure("validation_residual: observable cannot be inverted here");
    MapPoint next;
    try {
      next = map.step(*state);
    } catch (const std::exception& e) {
      throw ValidationFailure(std::string("validation_residual: map failed: ") + e.what());
    }
    if (!next.allFinite()) throw ValidationFailure("validation_residual: map escaped");
    return obs.evaluate(next);
  };

  const double h = 1.0 / static_cast<double>(J);
  const int p = circle.period;
  double sum = 0.0;
  for (std::size_t k = 0; k < J; ++k) {
    const double theta = static_cast<double>(k) * h;
    for (int i = 1; i < p; ++i) {
      sum += (eval_circle(circle, i + 1, theta) - push(eval_circle(circle, i, theta))).squaredNorm();
    }
    sum += (eval_circle(circle, 1, theta + circle.rotation) - push(eval_circle(circle, p, theta)))
               .squaredNorm();
  }
  return {std::sqrt(sum / (static_cast<double>(p) * static_cast<double>(J))), !identity};
}

}  // namespace brre
