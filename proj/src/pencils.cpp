#include "freehull/pencils.hpp"

#include <Eigen/Eigenvalues>

namespace freehull {

void AffinePencil::check() const {
  if (size < 1) throw DimensionError("AffinePencil: size must be positive");
  auto square = [&](const Matrix& M) { return M.rows() == size && M.cols() == size; };
  if (!square(A0) || !is_symmetric(A0)) throw DimensionError("AffinePencil: bad A0");
  if (static_cast<int>(A.size()) != g) throw DimensionError("AffinePencil: need g A-matrices");
  for (const Matrix& Aj : A)
    if (!square(Aj) || !is_symmetric(Aj)) throw DimensionError("AffinePencil: A_j not symmetric");
  for (const Slot& s : lifted) {
    if (!square(s.coeff)) throw DimensionError("AffinePencil: slot coefficient size");
    Matrix d = s.skew ? Matrix(s.coeff + s.coeff.transpose())
                      : Matrix(s.coeff - s.coeff.transpose());
    if (d.cwiseAbs().maxCoeff() > 1e-12)
      throw DimensionError("AffinePencil: slot coefficient symmetry flag mismatch");
  }
}

Matrix pencil_eval(const AffinePencil& L, const MatrixTuple& X,
                   const std::vector<Matrix>& lifted) {
  if (X.g() != L.g) throw DimensionError("pencil_eval: variable count mismatch");
  if (lifted.size() != L.lifted.size())
    throw DimensionError("pencil_eval: expected " + std::to_string(L.lifted.size()) +
                         " lifted values, got " + std::to_string(lifted.size()));
  const int n = X.n();
  Matrix out = kron(L.A0, Matrix::Identity(n, n));
  for (int j = 0; j < L.g; ++j) out += kron(L.A[j], X[j]);
  for (std::size_t l = 0; l < lifted.size(); ++l) {
    const Matrix& V = lifted[l];
    if (V.rows() != n || V.cols() != n) throw DimensionError("pencil_eval: lifted value size");
    const Matrix d = L.lifted[l].skew ? Matrix(V + V.transpose()) : Matrix(V - V.transpose());
    if (d.cwiseAbs().maxCoeff() > 1e-10)
      throw DimensionError("pencil_eval: lifted value has wrong symmetry for its slot");
    out += kron(L.lifted[l].coeff, V);
  }
  return out;
}

SpectrahedronReport in_spectrahedron(const AffinePencil& L, const MatrixTuple& X, double tol) {
  PsdReport r = is_psd(pencil_eval(L, X), tol);
  return SpectrahedronReport{r.psd, r.min_eig};
}

AffineMatrixProblem drop_problem(const AffinePencil& L, const MatrixTuple& X,
                                 double box_radius) {
  L.check();
  const int n = X.n();
  AffineMatrixProblem P;
  P.box_radius = box_radius;
  AffineBlock block;
  block.F0 = kron(L.A0, Matrix::Identity(n, n));
  for (int j = 0; j < L.g; ++j) block.F0 += kron(L.A[j], X[j]);
  block.F0 = symmetrize(block.F0);

  // parameters: per symmetric slot the upper triangle incl. diagonal, per skew
  // slot the strict upper triangle
  for (std::size_t l = 0; l < L.lifted.size(); ++l) {
    const Matrix& C = L.lifted[l].coeff;
    const bool skew = L.lifted[l].skew;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        if (skew && a == b) continue;
        std::vector<SparseEntry> entries;
        for (int r = 0; r < L.size; ++r)
          for (int c = 0; c < L.size; ++c) {
            const double v = C(r, c);
            if (v == 0.0) continue;
            // slot value E_ab = e_a e_b^T + e_b e_a^T (sym, a<b), e_a e_a^T, or
            // e_a e_b^T - e_b e_a^T (skew)
            entries.push_back({r * n + a, c * n + b, v});
            if (a != b) entries.push_back({r * n + b, c * n + a, skew ? -v : v});
          }
        P.labels.push_back("slot" + std::to_string(l) + "(" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
        block.coeff.push_back(std::move(entries));
      }
  }
  P.num_params = static_cast<int>(block.coeff.size());
  P.blocks.push_back(std::move(block));
  return P;
}

Verdict in_spectrahedrop(const AffinePencil& L, const MatrixTuple& X, const DropConfig& cfg) {
  return solve(drop_problem(L, X, cfg.box_radius), cfg.sdp);
}

Vector scalar_witness(const AffinePencil& L, const ScalarAffine& ell, const MatrixTuple& X) {
  if (ell.c.size() != X.g()) throw DimensionError("scalar_witness: functional size mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(ell.eval(X)));
  if (es.eigenvalues()(0) >= 0)
    throw NumericalError("scalar_witness: ell(X) is PSD, no witness exists");
  const Vector v = es.eigenvectors().col(0);
  Vector pt(X.g());
  for (int j = 0; j < X.g(); ++j) pt(j) = v.dot(X[j] * v);
  (void)L;
  return pt;
}

MatrixTuple direct_sum(const std::vector<MatrixTuple>& tuples) {
  if (tuples.empty()) throw DimensionError("direct_sum: empty list");
  const int g = tuples[0].g();
  int total = 0;
  for (const MatrixTuple& t : tuples) {
    if (t.g() != g) throw DimensionError("direct_sum: mismatched g");
    total += t.n();
  }
  MatrixTuple out(g, total);
  for (int j = 0; j < g; ++j) {
    int off = 0;
    for (const MatrixTuple& t : tuples) {
      out[j].block(off, off, t.n(), t.n()) = t[j];
      off += t.n();
    }
  }
  return out;
}

MatrixTuple compress(const Isometry& V, const MatrixTuple& X) {
  if (V.rows() != X.n()) throw DimensionError("compress: isometry row count mismatch");
  std::vector<Matrix> e;
  for (int j = 0; j < X.g(); ++j)
    e.push_back(symmetrize(V.matrix().transpose() * X[j] * V.matrix()));
  return MatrixTuple(std::move(e));
}

MatrixTuple convex_combination(const std::vector<Matrix>& Vs,
                               const std::vector<MatrixTuple>& Xs) {
  if (Vs.size() != Xs.size() || Vs.empty())
    throw DimensionError("convex_combination: need matching nonempty lists");
  const int m = static_cast<int>(Vs[0].cols());
  Matrix gram = Matrix::Zero(m, m);
  for (std::size_t l = 0; l < Vs.size(); ++l) {
    if (Vs[l].cols() != m || Vs[l].rows() != Xs[l].n())
      throw DimensionError("convex_combination: V_l shape mismatch");
    gram += Vs[l].transpose() * Vs[l];
  }
  if ((gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-9)
    throw DimensionError("convex_combination: sum V_l^T V_l != I (partition of identity)");
  const int g = Xs[0].g();
  MatrixTuple out(g, m);
  for (int j = 0; j < g; ++j) {
    Matrix acc = Matrix::Zero(m, m);
    for (std::size_t l = 0; l < Vs.size(); ++l) acc += Vs[l].transpose() * Xs[l][j] * Vs[l];
    out[j] = symmetrize(acc);
  }
  return out;
}

}  // namespace freehull
