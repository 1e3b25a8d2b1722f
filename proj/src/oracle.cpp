#include "brre/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"
#include "brre/spectral.hpp"

namespace brre {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

ComplexScalar unit(double frequency) { return std::polar(1.0, two_pi * wrap_unit(frequency)); }
}  // namespace

RealVector normalized_product(const std::vector<ComplexScalar>& roots) {
  std::vector<ComplexScalar> poly{1.0};
  for (const auto& r : roots) {
    const ComplexScalar scale = 1.0 - r;
    if (std::abs(scale) < 1e-12) {
      throw DegenerateFrequency("normalized_product: root coincides with z = 1");
    }
    std::vector<ComplexScalar> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k] / scale;
      next[k] -= poly[k] * r / scale;
    }
    poly = std::move(next);
  }
  RealVector c(static_cast<Eigen::Index>(poly.size()));
  for (std::size_t k = 0; k < poly.size(); ++k) c[static_cast<Eigen::Index>(k)] = poly[k].real();
  return c / c.sum();
}

ReferenceFilter tuned_filter(double omega, std::size_t n) {
  if (n < 3 || n % 2 == 0) throw ContractViolation("tuned_filter: length must be odd and >= 3");
  std::vector<ComplexScalar> roots;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double f = omega * static_cast<double>(k);
    roots.push_back(unit(f));
    roots.push_back(unit(-f));
  }
  return {normalized_product(roots), ReferenceKind::Tuned};
}

ReferenceFilter reference_polynomial(double omega, int p, double alpha, std::size_t convergent) {
  if (!(alpha > 0.0 && alpha < 0.25)) {
    throw ContractViolation("reference_polynomial: alpha must lie in (0, 1/4)");
  }
  if (p < 1 || convergent < 1) throw ContractViolation("reference_polynomial: need p >= 1, n >= 1");
  const auto cf = continued_fraction_convergents(omega, convergent);
  if (cf.size() < convergent) {
    throw ContractViolation("reference_polynomial: omega has only " + std::to_string(cf.size()) +
                            " convergents");
  }
  const auto [num, den] = cf[convergent - 1];
  const long exact = static_cast<long>(std::floor(alpha * p * static_cast<double>(den)));
  const long total = (static_cast<long>(p) * den) / 2;

  // Index j = s p + l with 0 <= l < p.
  auto frequency = [&](long j, double rotation) {
    const long s = j / p;
    const long l = j % p;
    return (static_cast<double>(s) * rotation + static_cast<double>(l)) / p;
  };
  const double surrogate = static_cast<double>(num) / static_cast<double>(den);
  std::vector<ComplexScalar> roots;
  for (long j = 1; j <= total; ++j) {
    const double f = frequency(j, j <= exact ? omega : surrogate);
    roots.push_back(unit(f));
    roots.push_back(unit(-f));
  }
  return {normalized_product(roots), ReferenceKind::ReferencePolynomial};
}

ReferenceFilter all_ones_filter(std::size_t n) {
  if (n < 1) throw ContractViolation("all_ones_filter: n must be >= 1");
  return {RealVector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)),
          ReferenceKind::AllOnes};
}

ComplexScalar evaluate_filter(const RealVector& c, ComplexScalar z) {
  ComplexScalar acc = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

RealVector apply_filter(const RealVector& c, const Trajectory& traj, std::size_t start) {
  const auto n = static_cast<std::size_t>(c.size());
  if (start + n > traj.size()) throw ContractViolation("apply_filter: window past the end");
  RealVector acc = RealVector::Zero(traj.dim());
  for (std::size_t k = 0; k < n; ++k) acc += c[static_cast<Eigen::Index>(k)] * traj.sample(start + k);
  return acc;
}

ComplexVector brute_force_fourier_coefficient(const Trajectory& traj, double omega, long n,
                                              std::size_t N) {
  if (N < 1000) throw ContractViolation("brute_force_fourier_coefficient: N must be >= 1000");
  if (N > traj.size()) throw ContractViolation("brute_force_fourier_coefficient: trajectory too short");
  const auto w = bump_weights(N);
  ComplexVector acc = ComplexVector::Zero(traj.dim());
  for (std::size_t t = 0; t < N; ++t) {
    const double phase = wrap_unit(-static_cast<double>(n) * omega * static_cast<double>(t));
    acc += (w[t] * std::polar(1.0, two_pi * phase)) * traj.sample(t).cast<ComplexScalar>();
  }
  return acc;
}

}  // namespace brre
