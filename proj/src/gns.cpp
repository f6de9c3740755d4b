#include "freehull/gns.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace freehull {

MatrixTuple GnsResult::symmetrized_tuple() const {
  std::vector<Matrix> e;
  for (const Matrix& z : Z) e.push_back(symmetrize(z));
  return MatrixTuple(std::move(e));
}

namespace {

int numerical_rank(const Vector& eigs_ascending, double rank_tol) {
  const double lmax = eigs_ascending.size() ? eigs_ascending(eigs_ascending.size() - 1) : 0.0;
  if (lmax <= 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < eigs_ascending.size(); ++i)
    if (eigs_ascending(i) > rank_tol * lmax) ++r;
  return r;
}

}  // namespace

GnsResult reconstruct(const MomentSequence& Y, int d, const GnsOptions& opts) {
  if (d < 1) throw DimensionError("gns: need d >= 1");
  if (2 * d > Y.max_deg()) throw DimensionError("gns: need moments to degree 2d");
  const int g = Y.g(), n = Y.n();

  const Matrix H = build_hankel(Y, d).flat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Vector evals = es.eigenvalues();
  const double lmax = std::max(evals(evals.size() - 1), 0.0);
  if (evals(0) < -opts.psd_tol * (1.0 + lmax))
    throw NumericalError("gns: H_d(Y) is not PSD (lambda_min = " + std::to_string(evals(0)) +
                         ")");

  GnsResult out;
  const std::vector<Word> words = enumerate_words(g, d);
  const int N = static_cast<int>(words.size());
  for (int k = 0; k <= d; ++k) {
    const int nk = static_cast<int>(count_words(g, k)) * n;
    Eigen::SelfAdjointEigenSolver<Matrix> esk(H.topLeftCorner(nk, nk));
    out.rank_profile.push_back(numerical_rank(esk.eigenvalues(), opts.rank_tol));
  }
  const int r = out.rank_profile[d];
  if (out.rank_profile[d - 1] != r)
    throw NumericalError("gns: flatness violated, rank H_" + std::to_string(d - 1) + " = " +
                         std::to_string(out.rank_profile[d - 1]) + " < rank H_" +
                         std::to_string(d) + " = " + std::to_string(r));

  // coordinates: H = U^T U with U = diag(sqrt(lambda)) V^T on the kept eigenspace
  Matrix U(r, N * n);
  {
    int kept = 0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
      if (evals(i) > opts.rank_tol * lmax) {
        U.row(kept++) = std::sqrt(evals(i)) * es.eigenvectors().col(i).transpose();
      }
    }
    if (kept != r) throw NumericalError("gns: rank bookkeeping failed");
  }

  // pseudo-inverse of the degree <= d-1 column block in the same rank geometry
  const int Nlow = static_cast<int>(count_words(g, d - 1));
  const Matrix U1 = U.leftCols(Nlow * n);
  Eigen::JacobiSVD<Matrix> svd(U1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Vector sinv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > std::sqrt(opts.rank_tol) * smax) sinv(i) = 1.0 / sv(i);
  const Matrix U1_pinv =
      svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();  // (Nlow n) x r

  // index of word w inside the degree <= d list
  auto col_span = [&](const Word& w) {
    const auto it = std::lower_bound(words.begin(), words.end(), w);
    return static_cast<int>(it - words.begin()) * n;
  };

  // shift by x_j maps the column class of (beta, k) to that of (x_j beta, k)
  for (int j = 1; j <= g; ++j) {
    Matrix S(r, Nlow * n);
    for (int b = 0; b < Nlow; ++b) {
      const Word shifted = Word::letter(j).concat(words[b]);
      S.middleCols(b * n, n) = U.middleCols(col_span(shifted), n);
    }
    out.Z.push_back(S * U1_pinv);
  }
  out.Q = U.middleCols(col_span(Word::empty()), n);

  for (const Matrix& Zj : out.Z)
    out.z_asymmetry = std::max(out.z_asymmetry, (Zj - Zj.transpose()).cwiseAbs().maxCoeff());

  // residuals: reproduce the moments up to degree 2(d-1)
  MatrixTuple Zt = out.symmetrized_tuple();
  for (const Word& w : enumerate_words(g, 2 * (d - 1))) {
    if (w != w.class_rep()) continue;
    const Matrix rep = out.Q.transpose() * eval_word(w, Zt) * out.Q;
    out.moment_mismatch =
        std::max(out.moment_mismatch, (rep - Y.get(w)).cwiseAbs().maxCoeff());
  }
  if (opts.p) out.p_min_eig = min_eig(opts.p->eval(Zt));

  const Matrix qgram = out.Q.transpose() * out.Q;
  if ((qgram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
    throw NumericalError("gns: Q is not an isometry");
  return out;
}

}  // namespace freehull
