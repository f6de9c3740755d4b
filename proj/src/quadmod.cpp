#include "freehull/relax.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include <map>

namespace freehull {

namespace {

int packed_index(int i, int j, int dim) {
  // i <= j, upper triangle row-major
  return i * dim - i * (i - 1) / 2 + (j - i);
}

Matrix unpack_sym(const Vector& z, int off, int dim) {
  Matrix M(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) M(i, j) = M(j, i) = z(off + packed_index(i, j, dim));
  return M;
}

Matrix clamp_psd(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(M));
  Vector d = es.eigenvalues().cwiseMax(0.0);
  return symmetrize(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose());
}

MatrixPoly gram_to_poly(const std::vector<Word>& basis, const Matrix& S, int g) {
  MatrixPoly out(g, 1);
  const int N = static_cast<int>(basis.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Matrix c(1, 1);
      c(0, 0) = S(i, j);
      out.add_term(basis[i].involution().concat(basis[j]), c);
    }
  return out;
}

MatrixPoly loc_gram_to_poly(const std::vector<Word>& basis, const Matrix& G,
                            const MatrixPoly& p) {
  const int l = p.block_dim();
  const int N = static_cast<int>(basis.size());
  MatrixPoly out(p.g(), 1);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
          const double gv = G(i * l + a, j * l + b);
          if (gv == 0.0) continue;
          for (const auto& [gamma, pg] : p.terms()) {
            if (pg(a, b) == 0.0) continue;
            Matrix c(1, 1);
            c(0, 0) = gv * pg(a, b);
            out.add_term(basis[i].involution().concat(gamma).concat(basis[j]), c);
          }
        }
  return out;
}

}  // namespace

double quad_module_residual(const QuadModuleCertificate& cert, const MatrixPoly& q,
                            const MatrixPoly& p) {
  MatrixPoly rebuilt = gram_to_poly(cert.sos_basis, cert.sos_gram, q.g()) +
                       loc_gram_to_poly(cert.loc_basis, cert.loc_gram, p);
  MatrixPoly diff = rebuilt - q;
  double r = 0.0;
  for (const auto& [w, b] : diff.terms()) r = std::max(r, b.cwiseAbs().maxCoeff());
  return r;
}

QuadModuleResult quad_module_membership(const MatrixPoly& q, const MatrixPoly& p, int alpha,
                                        int beta, const RelaxConfig& cfg) {
  if (q.block_dim() != 1) throw DimensionError("quad_module_membership: q must be scalar");
  if (!q.is_symmetric(1e-12) || !p.is_symmetric(1e-12))
    throw DimensionError("quad_module_membership: q and p must be symmetric");
  if (q.g() != p.g()) throw DimensionError("quad_module_membership: variable count mismatch");
  const int g = q.g(), l = p.block_dim();
  const int cap = std::max(2 * alpha, 2 * beta + p.degree());
  if (q.degree() > cap)
    throw DimensionError("quad_module_membership: deg q exceeds max(2 alpha, 2 beta + deg p)");

  const std::vector<Word> sos_basis = enumerate_words(g, alpha);
  const std::vector<Word> loc_basis = enumerate_words(g, beta);
  const int NA = static_cast<int>(sos_basis.size());
  const int M = static_cast<int>(loc_basis.size()) * l;
  const int nS = NA * (NA + 1) / 2, nG = M * (M + 1) / 2;

  // coefficient-matching system A z = rhs over all words up to the degree cap
  const std::vector<Word> eq_words = enumerate_words(g, cap);
  std::map<Word, int> eq_index;
  for (int i = 0; i < static_cast<int>(eq_words.size()); ++i) eq_index[eq_words[i]] = i;
  Matrix A = Matrix::Zero(eq_words.size(), nS + nG);
  Vector rhs = Vector::Zero(eq_words.size());
  for (const auto& [w, b] : q.terms()) rhs(eq_index.at(w)) = b(0, 0);

  for (int i = 0; i < NA; ++i)
    for (int j = i; j < NA; ++j) {
      const int col = packed_index(i, j, NA);
      A(eq_index.at(sos_basis[i].involution().concat(sos_basis[j])), col) += 1.0;
      if (i != j) A(eq_index.at(sos_basis[j].involution().concat(sos_basis[i])), col) += 1.0;
    }
  auto loc_entry = [&](int I, int J) {
    // unknown G[I,J]; contributes p_gamma(a,b) to word v* gamma w
    const int v = I / l, a = I % l, w = J / l, b = J % l;
    const int col = nS + packed_index(std::min(I, J), std::max(I, J), M);
    (void)col;
    std::vector<std::pair<int, double>> rows;
    for (const auto& [gamma, pg] : p.terms())
      if (pg(a, b) != 0.0)
        rows.push_back({eq_index.at(loc_basis[v].involution().concat(gamma).concat(loc_basis[w])),
                        pg(a, b)});
    return rows;
  };
  for (int I = 0; I < M; ++I)
    for (int J = I; J < M; ++J) {
      const int col = nS + packed_index(I, J, M);
      for (const auto& [row, val] : loc_entry(I, J)) A(row, col) += val;
      if (I != J)
        for (const auto& [row, val] : loc_entry(J, I)) A(row, col) += val;
    }

  QuadModuleResult out;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
  Vector z0 = cod.solve(rhs);
  const double match_res = (A * z0 - rhs).cwiseAbs().maxCoeff();
  if (match_res > 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff())) {
    out.found = false;
    out.note = "coefficient matching has no solution at these degree bounds";
    return out;
  }
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-10);
  Matrix kernel = lu.kernel();
  if (lu.dimensionOfKernel() == 0) kernel = Matrix::Zero(nS + nG, 0);

  AffineMatrixProblem P;
  P.num_params = static_cast<int>(kernel.cols());
  P.box_radius = cfg.box_radius > 0 ? cfg.box_radius
                                    : std::max(10.0, 10.0 * (1.0 + z0.cwiseAbs().maxCoeff()));
  P.blocks.resize(2);
  P.blocks[0].F0 = unpack_sym(z0, 0, NA);
  P.blocks[1].F0 = unpack_sym(z0, nS, M);
  P.blocks[0].coeff.resize(P.num_params);
  P.blocks[1].coeff.resize(P.num_params);
  for (int k = 0; k < P.num_params; ++k) {
    for (int i = 0; i < NA; ++i)
      for (int j = i; j < NA; ++j) {
        const double v = kernel(packed_index(i, j, NA), k);
        if (v == 0.0) continue;
        P.blocks[0].coeff[k].push_back({i, j, v});
        if (i != j) P.blocks[0].coeff[k].push_back({j, i, v});
      }
    for (int I = 0; I < M; ++I)
      for (int J = I; J < M; ++J) {
        const double v = kernel(nS + packed_index(I, J, M), k);
        if (v == 0.0) continue;
        P.blocks[1].coeff[k].push_back({I, J, v});
        if (I != J) P.blocks[1].coeff[k].push_back({J, I, v});
      }
    P.labels.push_back("gram_null_" + std::to_string(k));
  }

  Verdict v = solve(P, cfg.sdp);
  out.solver_verdict = v;
  if (v.margin >= -1e-9) {
    Vector z = z0;
    if (P.num_params > 0) z += kernel * v.point;
    QuadModuleCertificate cert;
    cert.sos_basis = sos_basis;
    cert.loc_basis = loc_basis;
    cert.sos_gram = clamp_psd(unpack_sym(z, 0, NA));
    cert.loc_gram = clamp_psd(unpack_sym(z, nS, M));
    const double res = quad_module_residual(cert, q, p);
    if (res <= 1e-7) {
      out.found = true;
      out.certificate = std::move(cert);
      return out;
    }
    out.note = "gram clamp broke coefficient matching (residual " + std::to_string(res) + ")";
    return out;
  }
  out.found = false;
  out.note = (v.status == FeasStatus::Infeasible)
                 ? "no PSD gram pair exists within the box; solver certificate attached"
                 : "solver returned " + to_string(v.status) + " with negative margin";
  return out;
}

}  // namespace freehull
