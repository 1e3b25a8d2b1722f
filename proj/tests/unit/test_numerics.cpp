#include <algorithm>

#include <doctest.h>

#include "../support.hpp"
#include "brre/errors.hpp"
#include "brre/numerics.hpp"

using namespace brre;
using namespace brre::testing;

namespace {

std::vector<ComplexScalar> sorted(std::vector<ComplexScalar> v) {
  std::sort(v.begin(), v.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("least squares on small systems") {
  RealMatrix A(2, 1);
  A << 1, 1;
  RealVector b(2);
  b << 1, 1;
  CHECK(least_squares_solve(A, b)[0] == doctest::Approx(1.0));

  RealVector rhs(2);
  rhs << 3, 4;
  const RealVector x = least_squares_solve(RealMatrix::Identity(2, 2), rhs);
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(4.0));

  RealMatrix V(3, 2);
  V << 1, 0, 1, 1, 1, 2;
  RealVector line(3);
  line << 0, 1, 2;
  const RealVector fit = least_squares_solve(V, line);
  CHECK(std::abs(fit[0]) < 1e-14);
  CHECK(fit[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("least squares rejects bad shapes and non-finite input") {
  CHECK_THROWS_AS(least_squares_solve(RealMatrix::Ones(2, 2), RealVector::Ones(3)), ContractViolation);
  RealMatrix A = RealMatrix::Ones(3, 2);
  A(1, 1) = std::nan("");
  CHECK_THROWS_AS(least_squares_solve(A, RealVector::Ones(3)), ContractViolation);
}

TEST_CASE("least squares residual is orthogonal to the column space") {
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix A = random_matrix(40, 12) + 3.0 * RealMatrix::Identity(40, 12);
    const RealVector b = random_matrix(40, 1);
    const RealVector x = least_squares_solve(A, b);
    CHECK((A.transpose() * (A * x - b)).norm() <= 1e-10 * A.norm() * b.norm());
  }
}

TEST_CASE("complex least squares examples") {
  ComplexMatrix A(1, 1);
  A(0, 0) = ComplexScalar(0, 1);
  ComplexMatrix B(1, 1);
  B(0, 0) = 1.0;
  CHECK(std::abs(complex_least_squares_solve(A, B)(0, 0) - ComplexScalar(0, -1)) < 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix U(2, 2);
  U << s, ComplexScalar(0, s), ComplexScalar(0, s), s;
  CHECK((complex_least_squares_solve(U, U) - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);

  const ComplexScalar lambda = std::polar(1.0, two_pi * 0.3);
  ComplexMatrix V(3, 2);
  for (int r = 0; r < 3; ++r) {
    V(r, 0) = std::pow(lambda, r);
    V(r, 1) = std::pow(std::conj(lambda), r);
  }
  ComplexVector two(2);
  two << 2.0, 2.0;
  const ComplexMatrix X = complex_least_squares_solve(V, V * two);
  CHECK((X - two).norm() < 1e-12);
}

TEST_CASE("eigenvalue examples") {
  for (const auto& z : real_eigenvalues(RealMatrix::Identity(3, 3))) CHECK(std::abs(z - 1.0) < 1e-15);

  const double th = std::numbers::pi / 3.0;
  RealMatrix R(2, 2);
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  const auto rot = sorted(real_eigenvalues(R));
  CHECK(std::abs(rot[0] - std::polar(1.0, -th)) < 1e-14);
  CHECK(std::abs(rot[1] - std::polar(1.0, th)) < 1e-14);

  RealMatrix C(2, 2);
  C << 0, -2, 1, 3;
  const auto comp = sorted(real_eigenvalues(C));
  CHECK(std::abs(comp[0] - 1.0) < 1e-13);
  CHECK(std::abs(comp[1] - 2.0) < 1e-13);
}

TEST_CASE("eigenvalues of M and its transpose agree and close under conjugation") {
  for (int trial = 0; trial < 10; ++trial) {
    const RealMatrix M = random_matrix(20, 20);
    const auto a = real_eigenvalues(M);
    const auto b = real_eigenvalues(M.transpose());
    const double scale = M.norm();
    CHECK(pairing_distance(a, b) <= 1e-10 * scale);
    for (const auto& z : a) {
      if (std::abs(z.imag()) <= 1e-12) continue;
      const bool found = std::any_of(a.begin(), a.end(), [&](auto w) { return std::abs(w - std::conj(z)) < 1e-10; });
      CHECK(found);
    }
  }
}

TEST_CASE("eigenvalues reject non-square input") {
  CHECK_THROWS_AS(real_eigenvalues(RealMatrix::Ones(2, 3)), ContractViolation);
}
