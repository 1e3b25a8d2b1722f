#include <doctest.h>

#include "../support.hpp"
#include "brre/birkhoff.hpp"
#include "brre/errors.hpp"
#include "brre/rre.hpp"
#include "brre/spectral.hpp"

using namespace brre;
using namespace brre::testing;

namespace {

RealVector as_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_constraints(const FilterSolution& s) {
  const auto& c = s.coefficients;
  const auto n = c.size();
  CHECK(std::abs(c.sum() - 1.0) < 1e-12);
  double asym = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) asym = std::max(asym, std::abs(c[k] - c[n - 1 - k]));
  CHECK(asym <= 1e-12 * std::max(1.0, c.cwiseAbs().maxCoeff()));
}

}  // namespace

TEST_CASE("difference signal examples") {
  const auto zero = difference_signal(Trajectory::scalar(std::vector<double>(6, 4.0)));
  CHECK(zero.u.norm() == 0.0);
  CHECK(zero.count() == 5);
  CHECK(zero.trajectory_length == 6);

  const auto ramp = difference_signal(Trajectory::scalar({0, 1, 2, 3, 4}));
  for (std::size_t t = 0; t < ramp.count(); ++t) CHECK(ramp.u(0, static_cast<Eigen::Index>(t)) == 1.0);

  const double w = 0.3;
  const auto cosine = difference_signal(cosine_signal(w, 10));
  for (int t = 0; t < 3; ++t) {
    CHECK(cosine.u(0, t) == doctest::Approx(std::cos(two_pi * w * (t + 1)) - std::cos(two_pi * w * t)));
  }
}

TEST_CASE("build_problem examples") {
  DifferenceSignal u1{RealMatrix(1, 3), 4};
  u1.u << 1, 2, 3;
  const auto p1 = build_problem(u1, 1, 1, 0.0);
  CHECK(p1.hankel.rows() == 1);
  CHECK(p1.hankel(0, 0) == 1.0);
  CHECK(p1.hankel(0, 2) == 3.0);
  REQUIRE(p1.row_weights.size() == 1);
  CHECK(p1.row_weights[0] == 1.0);

  DifferenceSignal u2{RealMatrix(1, 4), 5};
  u2.u << 1, 2, 3, 4;
  const auto p2 = build_problem(u2, 1, 2, 0.0);
  RealMatrix expected(2, 3);
  expected << 1, 2, 3, 2, 3, 4;
  CHECK((p2.hankel - expected).norm() == 0.0);

  const auto wt = symmetrized_filter_weights(5);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(wt[k] == wt[10 - k]);

  CHECK_THROWS_AS(build_problem(u2, 2, 2, 0.0), ContractViolation);
  CHECK_THROWS_AS(build_problem(u1, 1, 1, -1.0), ContractViolation);
  DifferenceSignal wide{RealMatrix::Ones(1, 30), 31};
  CHECK_THROWS_AS(build_problem(wide, 10, 5, 0.0), ContractViolation);
}

TEST_CASE("zero signal returns the symmetrized bump filter") {
  const std::size_t K = 6, T = 8;
  DifferenceSignal u{RealMatrix::Zero(1, static_cast<Eigen::Index>(T + 2 * K)), T + 2 * K + 1};
  const auto sol = solve_filter(build_problem(u, K, T, 1e-6));
  const RealVector wt = as_vector(symmetrized_filter_weights(K));
  CHECK((sol.coefficients - wt).norm() < 1e-12);
  CHECK(sol.residual * sol.residual == doctest::Approx(1e-6).epsilon(1e-10));
  CHECK(sol.fixed_point);
  CHECK(sol.scale_free_residual == 0.0);
}

TEST_CASE("single cosine is annihilated by a two-root filter") {
  const double w = 0.30901;
  const auto sol = rre_solve(cosine_signal(w, 40), 2, 20, 0.0);
  CHECK(sol.residual < 1e-12);
  check_constraints(sol);
  const auto roots = palindromic_roots(sol.coefficients);
  const ComplexScalar lambda = std::polar(1.0, two_pi * w);
  double best = 1.0, best_conj = 1.0;
  for (const auto& z : roots.roots) {
    best = std::min(best, std::abs(z - lambda));
    best_conj = std::min(best_conj, std::abs(z - std::conj(lambda)));
  }
  CHECK(best < 1e-6);
  CHECK(best_conj < 1e-6);
}

TEST_CASE("integrable standard-map orbit converges within a thousand samples") {
  const double gamma = 3.0;
  const std::size_t K = 150, T = static_cast<std::size_t>(gamma * K) / 2;
  const std::size_t n = T + 2 * K + 1;
  REQUIRE(n <= 1000);
  const auto sol = rre_solve(standard_orbit(0.7, 0.1, 0.0, n), K, T, 0.0);
  CHECK(sol.residual < 1e-11);
  check_constraints(sol);
}

TEST_CASE("scale-free residual arithmetic") {
  CHECK(scale_free_residual(std::sqrt(0.25), 0.25, 3.0) == 0.0);
  CHECK(scale_free_residual(2.0, 0.0, 4.0) == 0.5);
  CHECK(scale_free_residual(std::sqrt(1e-8 + 1e-20), 1e-8, 2.0) <= 1e-10);
  CHECK(scale_free_residual(1.0, 4.0, 1.0) == 0.0);
  CHECK(scale_free_residual(1.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("residual bounds and constraints on random orbits") {
  for (int trial = 0; trial < 12; ++trial) {
    const double y = uniform(0.0, 0.2);
    const double eps = trial % 2 == 0 ? 0.0 : 1e-8;
    const std::size_t K = uniform_count(5, 40);
    const std::size_t T = window_count(2.0, K, 2);
    const Trajectory tr = standard_orbit(0.7, 0.05, y, T + 2 * K + 1);
    const auto problem = build_problem(difference_signal(tr), K, T, eps);
    const auto sol = solve_filter(problem);
    const double r2 = sol.residual * sol.residual;
    CHECK(r2 >= eps - 1e-14);
    const double bound = filter_objective(problem, as_vector(symmetrized_filter_weights(K)));
    CHECK(r2 <= bound * (1.0 + 1e-12));
    check_constraints(sol);
    CHECK(r2 == doctest::Approx(filter_objective(problem, sol.coefficients)).epsilon(1e-8));
  }
}

TEST_CASE("residual sweep on the central circle is non-increasing") {
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t K : {25, 50, 100, 200}) {
    const std::size_t T = window_count(3.0, K, 2);
    const auto sol = rre_solve(standard_orbit(0.7, 0.1, 0.0, T + 2 * K + 1), K, T, 0.0);
    if (prev > 1e-13) CHECK(sol.residual <= 2.0 * prev);
    prev = sol.residual;
  }
}

TEST_CASE("serial and parallel solves agree exactly") {
  const std::size_t K = 60, T = 90;
  const Trajectory tr = standard_orbit(0.7, 0.05, 0.3, T + 2 * K + 1);
  const auto a = rre_solve(tr, K, T, 1e-10, Execution::Serial);
  const auto b = rre_solve(tr, K, T, 1e-10, Execution::Parallel);
  CHECK((a.coefficients - b.coefficients).norm() == 0.0);
  CHECK(a.residual == b.residual);
  const auto pa = build_problem(difference_signal(tr), K, T, 0.0, Execution::Serial);
  const auto pb = build_problem(difference_signal(tr), K, T, 0.0, Execution::Parallel);
  CHECK((pa.hankel - pb.hankel).norm() == 0.0);
}

TEST_CASE("adaptive defaults") {
  const AdaptiveOptions d;
  CHECK(d.epsilon == 0.0);
  CHECK(d.gamma == 3.0);
  CHECK(d.delta == 1e-10);
  CHECK(d.K_init == 50);
  CHECK(d.K_max == 600);
  CHECK(d.K_step == 50);
  CHECK(window_count(3.0, 50, 2) == 75);
  CHECK(window_count(2.0, 7, 1) == 14);
}

TEST_CASE("adaptive solve on a fixed point stops at K_init") {
  MapPoint x0(2);
  x0 << 0.0, 0.0;
  OrbitCache cache(std::make_shared<StandardMap>(0.7), std::make_shared<EmbeddingObservable>(), x0);
  const auto r = adaptive_solve(cache, AdaptiveOptions{});
  CHECK(r.solution.K == 50);
  CHECK(r.solution.scale_free_residual == 0.0);
  CHECK(r.history.size() == 1);
  CHECK(r.converged);
}

TEST_CASE("adaptive solve on a chaotic seed runs to K_max") {
  MapPoint x0(2);
  x0 << 0.5, 0.05;
  OrbitCache cache(std::make_shared<StandardMap>(0.7), std::make_shared<EmbeddingObservable>(), x0);
  AdaptiveOptions o;
  o.K_max = 300;
  const auto r = adaptive_solve(cache, o);
  CHECK(r.solution.K == 300);
  CHECK(r.solution.scale_free_residual > o.delta);
  CHECK_FALSE(r.converged);
  CHECK(r.history.size() == 6);
  CHECK(wba_doubling_residual(standard_orbit(0.7, 0.5, 0.05, 100000)) > 1e-5);
}

TEST_CASE("adaptive budget for scalar signals is (2 + gamma) K + 1 samples") {
  for (int trial = 0; trial < 5; ++trial) {
    const double w = uniform(0.1, 0.4);
    FixedTrajectorySource src(cosine_signal(w, 5000, uniform(0.0, 1.0)));
    AdaptiveOptions o;
    o.gamma = 2.0;
    o.K_init = 10;
    o.K_step = 10;
    o.K_max = 100;
    const auto r = adaptive_solve(src, o);
    CHECK(r.trajectory.size() == static_cast<std::size_t>((2.0 + o.gamma) * r.solution.K) + 1);
    CHECK(src.samples_drawn() == r.trajectory.size());
  }
}

TEST_CASE("adaptive solve reuses the cached orbit") {
  MapPoint x0(2);
  x0 << 0.5, 0.05;
  OrbitCache cache(std::make_shared<StandardMap>(0.7), std::make_shared<EmbeddingObservable>(), x0);
  AdaptiveOptions o;
  o.K_max = 150;
  const auto r = adaptive_solve(cache, o);
  CHECK(cache.samples_drawn() == window_count(o.gamma, 150, 2) + 2 * 150 + 1);
  CHECK(r.trajectory.size() == cache.samples_drawn());
}

TEST_CASE("adaptive solve surfaces source failures with history") {
  FixedTrajectorySource src(cosine_signal(golden, 150));
  AdaptiveOptions o;
  o.K_init = 10;
  o.K_step = 30;
  o.K_max = 100;
  o.delta = 1e-300;
  try {
    adaptive_solve(src, o);
    FAIL("expected AdaptiveInterrupted");
  } catch (const AdaptiveInterrupted& e) {
    CHECK_FALSE(e.history().empty());
    CHECK(e.cause() != nullptr);
  }
}

TEST_CASE("regularized solve stays finite when outer tap weights underflow") {
  const std::size_t K = 400, T = window_count(3.0, K, 2);
  const auto wt = symmetrized_filter_weights(K);
  REQUIRE(wt.front() == 0.0);
  const Trajectory tr = standard_orbit(0.7, 0.05, 0.1, T + 2 * K + 1);
  const auto problem = build_problem(difference_signal(tr), K, T, 1e-8);
  const auto sol = solve_filter(problem);
  CHECK(std::isfinite(sol.residual));
  CHECK(sol.coefficients[0] == 0.0);
  CHECK(sol.residual * sol.residual >= 1e-8 - 1e-14);
  CHECK(sol.residual * sol.residual <= filter_objective(problem, as_vector(wt)) * (1.0 + 1e-12));
  check_constraints(sol);
}
