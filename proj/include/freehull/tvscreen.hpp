#pragma once

#include "freehull/pencils.hpp"
#include "freehull/poly.hpp"

namespace freehull {

/// Constants of the bent-TV-screen constructions. gamma is tied to alpha by
/// 1 + alpha^2 = gamma^4; mu normalizes ||mu [[2,1],[1,1]]|| to 1.
struct TvScreenConfig {
  double alpha = 1.0;

  double gamma4() const { return 1.0 + alpha * alpha; }
  double gamma2() const { return std::sqrt(gamma4()); }
  double mu() const { return (3.0 - std::sqrt(5.0)) / 2.0; }
  void validate() const;
};

/// p = 1 - x1^2 - x2^4 in two variables.
MatrixPoly tv_screen_poly();

/// The classical (non-monic) lift of the TV screen:
///   [[1, 0, x], [0, 1, w], [x, w, 1]] (+) [[1, y], [y, w]]
/// with one lifted symmetric slot w. Lambda(X,Y,W) >= 0 iff W >= Y^2 and
/// I - X^2 - W^2 >= 0.
AffinePencil tv_lambda();

/// The variant L1 (+) L2 with constant term I at alpha = 1:
///   L1 = [[1, gamma y], [gamma y, w + alpha]],
///   L2 = [[1, 0, gamma^2 x], [0, 1, w], [gamma^2 x, w, 1 - 2 alpha w]].
AffinePencil tv_lift(const TvScreenConfig& cfg = {});

/// The 2x2 pair inside the projection of the classical lift but outside the
/// operator convex hull: Y = sqrt(mu) diag(1,0), W = mu [[2,1],[1,1]] of unit
/// norm, X the PSD square root of I - W^2. Construction invariants are checked
/// on the way out.
struct MaliciousPoint {
  Matrix X, Y, W;
  MatrixTuple xy_tuple() const { return MatrixTuple({X, Y}); }
};

MaliciousPoint malicious_point(const TvScreenConfig& cfg = {});

/// Reduced 4x4-block Hankel over words (empty, 1, 2, 22) built from the
/// classical-lift data (X1, X2, W), and its completion to the full H_2.
BlockMatrix reduced_hankel(const Matrix& X1, const Matrix& X2, const Matrix& W);

/// Completes the reduced Hankel to the 7x7-block H_2 via the explicit
/// congruence [I | Z] and the relabeling given by the cycle (4 5 6 7).
BlockMatrix complete_reduced_hankel(const Matrix& X1, const Matrix& X2, const Matrix& W);

}  // namespace freehull
