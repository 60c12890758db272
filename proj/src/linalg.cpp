#include "robustprec/linalg.hpp"

#include <cmath>

namespace robustprec {

SymEigen sym_eigen(const Matrix& a) {
  if (!is_finite(a)) throw InvalidInput("sym_eigen: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw EigenFailure("symmetric eigensolver did not converge");
  return SymEigen{es.eigenvalues(), es.eigenvectors()};
}

Vector sym_eigenvalues(const Matrix& a) {
  if (!is_finite(a)) throw InvalidInput("sym_eigenvalues: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigenFailure("symmetric eigensolver did not converge");
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& a) { return sym_eigenvalues(a).minCoeff(); }

Matrix chol_lower(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NotPD("Cholesky factorization failed: matrix is not positive definite");
  return llt.matrixL();
}

Matrix inverse_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NotPD("inverse_spd: matrix is not positive definite");
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

bool is_finite(const Matrix& a) { return a.allFinite(); }

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace robustprec
