#include "brre/numerics.hpp"

#include <string>

#include "brre/errors.hpp"

namespace brre {

namespace {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw ContractViolation(std::string(what) + ": non-finite entry");
  }
}

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

RealVector least_squares_solve(const RealMatrix& a, const RealVector& b) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw ContractViolation("least_squares_solve: empty matrix");
  }
  if (a.rows() < a.cols()) {
    throw ContractViolation("least_squares_solve: underdetermined system " +
                            dims(a.rows(), a.cols()));
  }
  if (b.size() != a.rows()) {
    throw ContractViolation("least_squares_solve: rhs length " + std::to_string(b.size()) +
                            " does not match " + dims(a.rows(), a.cols()));
  }
  require_finite(a, "least_squares_solve");
  require_finite(b, "least_squares_solve");
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(a);
  return cod.solve(b);
}

ComplexMatrix complex_least_squares_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  return complex_least_squares(a, b).solution;
}

ComplexLeastSquares complex_least_squares(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw ContractViolation("complex_least_squares_solve: empty matrix");
  }
  if (a.rows() < a.cols()) {
    throw ContractViolation("complex_least_squares_solve: underdetermined system " +
                            dims(a.rows(), a.cols()));
  }
  if (b.rows() != a.rows()) {
    throw ContractViolation("complex_least_squares_solve: rhs has " + std::to_string(b.rows()) +
                            " rows, matrix is " + dims(a.rows(), a.cols()));
  }
  require_finite(a, "complex_least_squares_solve");
  require_finite(b, "complex_least_squares_solve");
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  return {cod.solve(b), cod.rank()};
}

std::vector<ComplexScalar> real_eigenvalues(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ContractViolation("real_eigenvalues: matrix must be square, got " +
                            dims(m.rows(), m.cols()));
  }
  require_finite(m, "real_eigenvalues");
  Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    const auto budget = static_cast<std::size_t>(solver.getMaxIterations()) *
                        static_cast<std::size_t>(m.rows());
    throw SolverFailure("real_eigenvalues: QR iteration did not converge", budget);
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace brre
