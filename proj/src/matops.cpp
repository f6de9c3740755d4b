#include "freehull/matops.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace freehull {

bool is_symmetric(const Matrix& m, double rtol) {
  if (m.rows() != m.cols()) return false;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rtol * scale;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

SymEig sym_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("sym_eig: matrix must be square");
  if (!is_symmetric(m, 1e-10))
    throw DimensionError("sym_eig: matrix is not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  if (es.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigen iteration did not converge");
  return SymEig{es.eigenvalues(), es.eigenvectors()};
}

PsdReport is_psd(const Matrix& m, double tol) {
  const double lmin = min_eig(m);
  return PsdReport{lmin >= -tol, lmin};
}

double min_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("min_eig: matrix must be square");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("min_eig: eigen iteration did not converge");
  return es.eigenvalues()(0);
}

Matrix principal_sqrt(const Matrix& m) {
  SymEig eig = sym_eig(m);
  Vector d = eig.values;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -1e-10)
      throw NumericalError("principal_sqrt: matrix is not PSD (lambda_min = " +
                           std::to_string(d(i)) + ")");
    d(i) = std::sqrt(std::max(d(i), 0.0));
  }
  return symmetrize(eig.vectors * d.asDiagonal() * eig.vectors.transpose());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace freehull
