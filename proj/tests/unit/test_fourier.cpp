#include <doctest.h>

#include "../support.hpp"
#include "brre/birkhoff.hpp"
#include "brre/classify.hpp"
#include "brre/errors.hpp"
#include "brre/fourier.hpp"

using namespace brre;
using namespace brre::testing;

namespace {

Trajectory embedded_rotation(double omega, std::size_t n, double radius = 1.0) {
  RealMatrix a(2, static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t) {
    a(0, static_cast<Eigen::Index>(t)) = radius * std::cos(two_pi * omega * static_cast<double>(t));
    a(1, static_cast<Eigen::Index>(t)) = radius * std::sin(two_pi * omega * static_cast<double>(t));
  }
  return Trajectory(a);
}

FourierCircle fitted(double k, double x, double y) {
  MapPoint x0(2);
  x0 << x, y;
  const auto c = classify_trajectory(std::make_shared<StandardMap>(k), std::make_shared<EmbeddingObservable>(), x0,
                                     ClassifyParams{});
  REQUIRE(c.tag == TrajectoryClass::Integrable);
  const int L = choose_num_modes(c.fit_signal.size() - 1, c.rotation);
  return project_circle(c.fit_signal, c.rotation, L, c.period);
}

}  // namespace

TEST_CASE("mode overlap basics") {
  for (double w : {0.1, golden, 0.5}) CHECK(std::abs(mode_overlap(300, w, 0) - 1.0) < 1e-14);
  CHECK(std::abs(mode_overlap(1000, 0.5, 2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(choose_num_modes(1000, 0.5) == 0);
  CHECK(choose_num_modes(1000, golden) > 20);
  CHECK(choose_num_modes(1000, golden) == choose_num_modes(1000, golden, 0.5));
}

TEST_CASE("chosen mode count honours the overlap bound") {
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t T = uniform_count(20, 800);
    const double w = uniform(0.0, 0.5);
    const int L = choose_num_modes(T, w, 0.5);
    CHECK(overlap_radius(T, w, L) < 0.5);
    CHECK(L <= static_cast<int>((T - 1 + 1) / 2));
    CHECK(choose_num_modes(T, w, 0.3) <= L);
    CHECK(choose_num_modes(T, w, 0.1) <= choose_num_modes(T, w, 0.3));
  }
}

TEST_CASE("condition bound exceeds the measured condition number") {
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t T = uniform_count(100, 600);
    const double w = uniform(0.05, 0.45);
    const int L = choose_num_modes(T, w, 0.5);
    const auto circle = project_circle(embedded_rotation(w, T + 1), w, L, 1);
    CHECK(circle.condition_estimate <= condition_bound(overlap_radius(T, w, L)) * (1.0 + 1e-10));
  }
}

TEST_CASE("projection examples") {
  const Trajectory c = Trajectory::scalar(std::vector<double>(50, 1.75));
  const auto mean_only = project_circle(c, 0.3, 0, 1);
  CHECK(std::abs(mean_only.coefficients(0, 0) - 1.75) < 1e-14);
  CHECK((eval_circle(mean_only, 1, 0.37).array() - 1.75).abs().maxCoeff() < 1e-14);

  const double w = 0.2718;
  const auto one = project_circle(embedded_rotation(w, 200), w, 1, 1);
  const auto& V = one.coefficients;
  CHECK(std::abs(V(0, 0) - 0.5) < 1e-10);
  CHECK(std::abs(V(2, 0) - 0.5) < 1e-10);
  CHECK(std::abs(V(0, 1) - ComplexScalar(0, 0.5)) < 1e-10);
  CHECK(std::abs(V(2, 1) - ComplexScalar(0, -0.5)) < 1e-10);
  CHECK(std::abs(V(1, 0)) < 1e-10);
  CHECK(std::abs(V(1, 1)) < 1e-10);

  const RealVector at0 = eval_circle(one, 1, 0.0);
  const RealVector at_half = eval_circle(one, 1, 0.5);
  CHECK((at0 + at_half).norm() < 1e-10);

  CHECK_THROWS_AS(project_circle(c, 0.3, 30, 1), ContractViolation);
  CHECK_THROWS_AS(project_circle(embedded_rotation(w, 50), w, 1, 3), ContractViolation);
}

TEST_CASE("twist map circle is recovered exactly") {
  MapPoint x0(2);
  x0 << 0.2, golden;
  const Trajectory tr = sample_trajectory(StandardMap(0.0), IdentityObservable(2), x0, 400);
  // Identity coordinates wrap, so fit on the embedding instead.
  const Trajectory emb = sample_trajectory(StandardMap(0.0), EmbeddingObservable(), x0, 400);
  const double w = fold_rotation(golden);
  const auto circle = project_circle(emb, w, 3, 1);
  for (int j = 0; j < 32; ++j) {
    const RealVector p = eval_circle(circle, 1, j / 32.0);
    CHECK(std::abs(p.norm() - (golden + 0.5)) < 1e-10);
  }
  CHECK(validation_residual(circle, StandardMap(0.0), EmbeddingObservable()).residual <= 1e-10);
  CHECK(tr.sample(0)[1] == golden);
}

TEST_CASE("evaluation matches an inverse DFT of the padded coefficients") {
  const auto circle = fitted(0.7, 0.05, 0.3);
  int M = 64;
  while (M < 2 * circle.L + 1) M *= 2;
  for (int d = 0; d < circle.D; ++d) {
    std::vector<ComplexScalar> padded(M, 0.0);
    for (int l = -circle.L; l <= circle.L; ++l) padded[static_cast<std::size_t>((l + M) % M)] = circle.coefficients(l + circle.L, d);
    for (int m = 0; m < M; ++m) {
      ComplexScalar s = 0.0;
      for (int k = 0; k < M; ++k) s += padded[static_cast<std::size_t>(k)] * std::polar(1.0, two_pi * k * m / M);
      CHECK(std::abs(eval_circle(circle, 1, static_cast<double>(m) / M)[d] - s.real()) < 1e-12);
    }
  }
}

TEST_CASE("fitted standard-map circles validate") {
  for (double y : {0.0, 0.1, 0.3, 0.4}) {
    const auto circle = fitted(0.7, 0.05, y);
    CHECK(validation_residual(circle, StandardMap(0.7), EmbeddingObservable()).residual < 1e-2);
  }
  const auto island = fitted(0.7, 0.05, 0.53);
  CHECK(island.period == 2);
  CHECK(validation_residual(island, StandardMap(0.7), EmbeddingObservable()).residual < 1e-2);
}

TEST_CASE("perturbing a coefficient raises the validation residual proportionally") {
  auto circle = fitted(0.7, 0.05, 0.1);
  const double base = validation_residual(circle, StandardMap(0.7), EmbeddingObservable()).residual;
  circle.coefficients(circle.L + 1, 0) += 1e-3;
  circle.coefficients(circle.L - 1, 0) += 1e-3;
  const double bumped = validation_residual(circle, StandardMap(0.7), EmbeddingObservable()).residual;
  CHECK(bumped - base > 1e-4);
  CHECK(bumped - base < 1e-2);
}

TEST_CASE("projection reproduces the weighted signal within its residual") {
  for (int trial = 0; trial < 5; ++trial) {
    const double w = uniform(0.1, 0.4);
    const std::size_t n = 300;
    Trajectory sig = embedded_rotation(w, n);
    RealMatrix noisy = sig.samples() + 1e-3 * random_matrix(2, static_cast<Eigen::Index>(n));
    const auto circle = project_circle(Trajectory(noisy), w, 2, 1);
    const auto wt = bump_weights(n);
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const RealVector z = eval_circle(circle, 1, w * static_cast<double>(t));
      sum += wt[t] * (z - noisy.col(static_cast<Eigen::Index>(t))).squaredNorm();
    }
    CHECK(std::sqrt(sum) <= circle.residual * (1.0 + 1e-8) + 1e-14);
  }
}

TEST_CASE("validation needs an invertible observable") {
  struct Opaque final : Observable {
    int output_dimension() const override { return 2; }
    RealVector evaluate(const MapPoint& p) const override { return p; }
  };
  const auto circle = project_circle(embedded_rotation(0.3, 50), 0.3, 1, 1);
  CHECK_THROWS_AS(validation_residual(circle, StandardMap(0.0), Opaque{}), ValidationFailure);
}
