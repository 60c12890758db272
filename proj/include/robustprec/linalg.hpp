#pragma once

#include <Eigen/Dense>

#include "robustprec/errors.hpp"

namespace robustprec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // columns are eigenvectors
};

// Eigendecomposition of a symmetric matrix. Throws EigenFailure if the
// solver does not converge and InvalidInput for non-finite entries.
SymEigen sym_eigen(const Matrix& a);

// Eigenvalues only (ascending).
Vector sym_eigenvalues(const Matrix& a);

double min_eigenvalue(const Matrix& a);

// Lower Cholesky factor of an SPD matrix; throws NotPD.
Matrix chol_lower(const Matrix& a);

// Inverse of an SPD matrix via Cholesky; throws NotPD.
Matrix inverse_spd(const Matrix& a);

bool is_finite(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol = 1e-10);

// (a + a^T) / 2
Matrix symmetrize(const Matrix& a);

double max_abs(const Matrix& a);

}  // namespace robustprec
