#include "freehull/tvscreen.hpp"

#include <cmath>

namespace freehull {

void TvScreenConfig::validate() const {
  if (!(alpha > 0)) throw DimensionError("TvScreenConfig: need alpha > 0");
  if (std::abs(1.0 + alpha * alpha - gamma4()) > 1e-12)
    throw NumericalError("TvScreenConfig: 1 + alpha^2 != gamma^4");
  Matrix W = mu() * (Matrix(2, 2) << 2, 1, 1, 1).finished();
  if (std::abs(W.operatorNorm() - 1.0) > 1e-10)
    throw NumericalError("TvScreenConfig: ||mu [[2,1],[1,1]]|| != 1");
}

MatrixPoly tv_screen_poly() { return parse_poly("1 - x1^2 - x2^4", 2); }

AffinePencil tv_lambda() {
  AffinePencil L;
  L.size = 5;
  L.g = 2;
  L.A0 = Matrix::Zero(5, 5);
  L.A0.diagonal() << 1, 1, 1, 1, 0;
  L.A.assign(2, Matrix::Zero(5, 5));
  L.A[0](0, 2) = L.A[0](2, 0) = 1.0;  // x in the first block
  L.A[1](3, 4) = L.A[1](4, 3) = 1.0;  // y in the second block
  Matrix W = Matrix::Zero(5, 5);
  W(1, 2) = W(2, 1) = 1.0;
  W(4, 4) = 1.0;
  L.lifted.push_back({W, false});
  return L;
}

AffinePencil tv_lift(const TvScreenConfig& cfg) {
  cfg.validate();
  const double g2 = cfg.gamma2();
  AffinePencil L;
  L.size = 5;
  L.g = 2;
  L.A0 = Matrix::Zero(5, 5);
  L.A0.diagonal() << 1, cfg.alpha, 1, 1, 1;  // L1 rows 0..1, L2 rows 2..4
  L.A.assign(2, Matrix::Zero(5, 5));
  L.A[0](2, 4) = L.A[0](4, 2) = g2 * g2;  // gamma^2 x
  L.A[1](0, 1) = L.A[1](1, 0) = g2;       // gamma y
  Matrix W = Matrix::Zero(5, 5);
  W(1, 1) = 1.0;
  W(3, 4) = W(4, 3) = 1.0;
  W(4, 4) = -2.0 * cfg.alpha;
  L.lifted.push_back({W, false});
  return L;
}

MaliciousPoint malicious_point(const TvScreenConfig& cfg) {
  cfg.validate();
  const double mu = cfg.mu();
  MaliciousPoint pt;
  pt.W = mu * (Matrix(2, 2) << 2, 1, 1, 1).finished();
  pt.Y = std::sqrt(mu) * (Matrix(2, 2) << 1, 0, 0, 0).finished();
  pt.X = principal_sqrt(Matrix::Identity(2, 2) - pt.W * pt.W);

  const Matrix I = Matrix::Identity(2, 2);
  if (std::abs(pt.W.operatorNorm() - 1.0) > 1e-10)
    throw NumericalError("malicious_point: ||W|| != 1");
  if (min_eig(pt.W - pt.Y * pt.Y) < -1e-10)
    throw NumericalError("malicious_point: Y^2 not below W");
  if ((I - pt.X * pt.X - pt.W * pt.W).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("malicious_point: I - X^2 - W^2 != 0");
  const Matrix Y2 = pt.Y * pt.Y;
  const double lmin = min_eig(I - pt.X * pt.X - Y2 * Y2);
  const double expected = mu * mu * (3.0 - std::sqrt(10.0));
  if (std::abs(lmin - expected) > 1e-8)
    throw NumericalError("malicious_point: lambda_min(I - X^2 - Y^4) off target");
  if (min_eig(pencil_eval(tv_lambda(), pt.xy_tuple(), {pt.W})) < -1e-9)
    throw NumericalError("malicious_point: Lambda(X,Y,W) not PSD");
  return pt;
}

namespace {

std::vector<Word> words_of(std::initializer_list<const char*> digits) {
  std::vector<Word> out;
  for (const char* s : digits) out.push_back(Word::parse(s, 2));
  return out;
}

}  // namespace

BlockMatrix reduced_hankel(const Matrix& X1, const Matrix& X2, const Matrix& W) {
  const int n = static_cast<int>(X1.rows());
  const Matrix I = Matrix::Identity(n, n);
  std::vector<Word> labels = words_of({"", "1", "2", "22"});
  BlockMatrix H(labels, labels, n, n);
  const Matrix row0[4] = {I, X1, X2, W};
  const Matrix row1[4] = {X1, X1 * X1, X1 * X2, X1 * W};
  const Matrix row2[4] = {X2, X2 * X1, W, X2 * W};
  const Matrix row3[4] = {W, W * X1, W * X2, W * W};
  const Matrix* rows[4] = {row0, row1, row2, row3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) H.block(i, j) = rows[i][j];
  return H;
}

BlockMatrix complete_reduced_hankel(const Matrix& X1, const Matrix& X2, const Matrix& W) {
  const int n = static_cast<int>(X1.rows());
  BlockMatrix Hc = reduced_hankel(X1, X2, W);

  // [I | Z] congruence; Z columns correspond to the missing words 11, 12, 21
  Matrix Z = Matrix::Zero(4 * n, 3 * n);
  Z.block(0 * n, 0 * n, n, n) = X1 * X1;
  Z.block(0 * n, 1 * n, n, n) = X1 * X2;
  Z.block(2 * n, 2 * n, n, n) = X1;
  Matrix IZ(4 * n, 7 * n);
  IZ << Matrix::Identity(4 * n, 4 * n), Z;
  const Matrix M = IZ.transpose() * Hc.flat() * IZ;  // word order: e,1,2,22,11,12,21

  // relabel to the graded order e,1,2,11,12,21,22: the cycle (4 5 6 7)
  const int from[7] = {0, 1, 2, 4, 5, 6, 3};
  std::vector<Word> labels = words_of({"", "1", "2", "11", "12", "21", "22"});
  BlockMatrix H2(labels, labels, n, n);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      H2.block(i, j) = M.block(from[i] * n, from[j] * n, n, n);
  return H2;
}

}  // namespace freehull
