#pragma once

#include "freehull/moments.hpp"
#include "freehull/poly.hpp"
#include "freehull/sdp.hpp"

#include <vector>

namespace freehull {

/// Affine linear pencil L(x) = A0 + sum_j A_j x_j with optional lifted slots.
/// A lifted slot pairs a coefficient matrix with a symmetric or skew-symmetric
/// matrix variable; skew slots carry skew coefficients so that every term
/// coeff (x) value is symmetric.
struct AffinePencil {
  struct Slot {
    Matrix coeff;
    bool skew = false;
  };

  int size = 0;  // k
  int g = 0;
  Matrix A0;
  std::vector<Matrix> A;      // g symmetric coefficient matrices
  std::vector<Slot> lifted;   // h lifted slots

  bool monic(double tol = 1e-12) const {
    return (A0 - Matrix::Identity(size, size)).cwiseAbs().maxCoeff() <= tol;
  }
  void check() const;
};

/// L(X) = A0 (x) I + sum_j A_j (x) X_j + sum_l coeff_l (x) V_l.
Matrix pencil_eval(const AffinePencil& L, const MatrixTuple& X,
                   const std::vector<Matrix>& lifted = {});

struct SpectrahedronReport {
  bool member;
  double min_eig;
};

SpectrahedronReport in_spectrahedron(const AffinePencil& L, const MatrixTuple& X,
                                     double tol = kDefaultPsdTol);

struct DropConfig {
  double box_radius = 10.0;
  SdpConfig sdp;
};

/// Membership of X in the coordinate projection of D_L: semidefinite
/// feasibility over the lifted slots.
Verdict in_spectrahedrop(const AffinePencil& L, const MatrixTuple& X,
                         const DropConfig& config = {});

/// Builds the AffineMatrixProblem behind in_spectrahedrop (one block, the
/// lifted slot entries as parameters).
AffineMatrixProblem drop_problem(const AffinePencil& L, const MatrixTuple& X,
                                 double box_radius);

/// Scalar affine functional c0 + sum c_j x_j, evaluated at tuples as
/// c0 I + sum c_j X_j.
struct ScalarAffine {
  double c0 = 0.0;
  Vector c;
  Matrix eval(const MatrixTuple& X) const {
    Matrix out = c0 * Matrix::Identity(X.n(), X.n());
    for (int j = 0; j < X.g(); ++j) out += c(j) * X[j];
    return out;
  }
};

/// Given X in D_L with ell(X) not PSD, compresses along a negative unit
/// eigenvector v: returns v^T X v in R^g, which stays in D_L(1) and keeps
/// ell negative.
Vector scalar_witness(const AffinePencil& L, const ScalarAffine& ell, const MatrixTuple& X);

MatrixTuple direct_sum(const std::vector<MatrixTuple>& tuples);
MatrixTuple compress(const Isometry& V, const MatrixTuple& X);

/// Matrix convex combination sum_l V_l^T X^l V_l with sum_l V_l^T V_l = I.
MatrixTuple convex_combination(const std::vector<Matrix>& Vs,
                               const std::vector<MatrixTuple>& Xs);

}  // namespace freehull
