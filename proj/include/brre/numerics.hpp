#pragma once

// Dense linear-algebra kernels used by the rest of the library. Every solver
// decision lives here so the domain code only sees these three calls.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace brre {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexScalar = std::complex<double>;

/// Minimizes |A x - b| with a rank-revealing Householder factorization.
/// Rank-deficient systems return the minimum-norm minimizer.
RealVector least_squares_solve(const RealMatrix& a, const RealVector& b);

/// Column-wise complex least squares, minimum-norm on rank deficiency.
ComplexMatrix complex_least_squares_solve(const ComplexMatrix& a, const ComplexMatrix& b);

struct ComplexLeastSquares {
  ComplexMatrix solution;
  Eigen::Index rank = 0;
};

/// complex_least_squares_solve that also reports the numerical rank of A.
ComplexLeastSquares complex_least_squares(const ComplexMatrix& a, const ComplexMatrix& b);

/// All eigenvalues of a real square matrix, with multiplicity. Order is unspecified;
/// complex eigenvalues come in conjugate pairs.
std::vector<ComplexScalar> real_eigenvalues(const RealMatrix& m);

}  // namespace brre
