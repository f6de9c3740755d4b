#include "freehull/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace freehull {

Matrix AffineBlock::value(const Vector& u) const {
  Matrix F = F0;
  for (int i = 0; i < static_cast<int>(coeff.size()); ++i)
    for (const SparseEntry& e : coeff[i]) F(e.row, e.col) += u(i) * e.value;
  return F;
}

int AffineMatrixProblem::total_dim() const {
  int d = 0;
  for (const AffineBlock& b : blocks) d += b.dim();
  return d;
}

void AffineMatrixProblem::check() const {
  if (!(box_radius > 0.0) || !std::isfinite(box_radius))
    throw DimensionError("AffineMatrixProblem: box radius must be finite and positive");
  for (const AffineBlock& b : blocks) {
    if (b.F0.rows() != b.F0.cols()) throw DimensionError("AffineMatrixProblem: block not square");
    if (static_cast<int>(b.coeff.size()) != num_params)
      throw DimensionError("AffineMatrixProblem: coefficient list length != num_params");
    for (const auto& entries : b.coeff)
      for (const SparseEntry& e : entries)
        if (e.row < 0 || e.col < 0 || e.row >= b.dim() || e.col >= b.dim())
          throw DimensionError("AffineMatrixProblem: coefficient entry out of range");
  }
}

double AffineMatrixProblem::margin(const Vector& u) const {
  double t = std::numeric_limits<double>::infinity();
  for (const AffineBlock& b : blocks) t = std::min(t, min_eig(b.value(u)));
  return t;
}

std::string to_string(FeasStatus s) {
  switch (s) {
    case FeasStatus::StrictlyFeasible: return "StrictlyFeasible";
    case FeasStatus::Infeasible: return "Infeasible";
    case FeasStatus::Marginal: return "Marginal";
  }
  return "?";
}

namespace {

struct BarrierState {
  std::vector<Matrix> Ginv;   // per block, (F_b(u) - t I)^{-1}
  double logdet = 0.0;
  bool feasible = false;
};

// Factorizes every block at (u, t); fails when some block is not PD.
BarrierState factorize(const AffineMatrixProblem& P, const Vector& u, double t) {
  BarrierState st;
  st.Ginv.reserve(P.blocks.size());
  st.feasible = true;
  for (const AffineBlock& b : P.blocks) {
    Matrix G = b.value(u);
    G.diagonal().array() -= t;
    G = symmetrize(G);
    Eigen::LLT<Matrix> llt(G);
    if (llt.info() != Eigen::Success) {
      st.feasible = false;
      return st;
    }
    const Matrix L = llt.matrixL();
    for (Eigen::Index i = 0; i < L.rows(); ++i) st.logdet += 2.0 * std::log(L(i, i));
    st.Ginv.push_back(llt.solve(Matrix::Identity(b.dim(), b.dim())));
  }
  return st;
}

double barrier_value(const AffineMatrixProblem& P, const BarrierState& st, const Vector& u,
                     double t, double mu) {
  double v = t / mu + st.logdet;
  for (int i = 0; i < P.num_params; ++i)
    v += std::log(P.box_radius - u(i)) + std::log(P.box_radius + u(i));
  return v;
}

bool in_box(const AffineMatrixProblem& P, const Vector& u) {
  for (int i = 0; i < P.num_params; ++i)
    if (!(std::abs(u(i)) < P.box_radius)) return false;
  return true;
}

// Gradient and Hessian of the barrier in z = (u, t).
void derivatives(const AffineMatrixProblem& P, const BarrierState& st, const Vector& u,
                 double mu, Vector& grad, Matrix& hess) {
  const int m = P.num_params;
  grad = Vector::Zero(m + 1);
  hess = Matrix::Zero(m + 1, m + 1);
  grad(m) = 1.0 / mu;
  for (std::size_t bi = 0; bi < P.blocks.size(); ++bi) {
    const AffineBlock& b = P.blocks[bi];
    const Matrix& Gi = st.Ginv[bi];
    const Matrix Gi2 = Gi * Gi;
    grad(m) -= Gi.trace();
    hess(m, m) -= Gi2.trace();
    const int dim = b.dim();
    Matrix FGi(dim, dim), Bmat(dim, dim);
    for (int i = 0; i < m; ++i) {
      const auto& Ei = b.coeff[i];
      if (Ei.empty()) continue;
      double gi = 0.0, hit = 0.0;
      for (const SparseEntry& e : Ei) {
        gi += e.value * Gi(e.col, e.row);
        hit += e.value * Gi2(e.col, e.row);
      }
      grad(i) += gi;
      hess(i, m) += hit;
      hess(m, i) += hit;
      // B = Ginv F_i Ginv, then H_ij -= sum over entries of F_j of B(col,row).
      FGi.setZero();
      for (const SparseEntry& e : Ei) FGi.row(e.row) += e.value * Gi.row(e.col);
      Bmat.noalias() = Gi * FGi;
      for (int j = 0; j <= i; ++j) {
        const auto& Ej = b.coeff[j];
        if (Ej.empty()) continue;
        double hij = 0.0;
        for (const SparseEntry& e : Ej) hij += e.value * Bmat(e.col, e.row);
        hess(i, j) -= hij;
        if (i != j) hess(j, i) -= hij;
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    const double dp = P.box_radius - u(i), dm = P.box_radius + u(i);
    grad(i) += -1.0 / dp + 1.0 / dm;
    hess(i, i) -= 1.0 / (dp * dp) + 1.0 / (dm * dm);
  }
}

// Certificate from the final central point: Lambda_b = mu Ginv_b, normalized to
// unit total trace; box duals projected so the linear identity holds exactly.
InfeasibilityCertificate extract_certificate(const AffineMatrixProblem& P,
                                             const BarrierState& st, double mu) {
  InfeasibilityCertificate cert;
  double s = 0.0;
  for (const Matrix& Gi : st.Ginv) s += mu * Gi.trace();
  for (const Matrix& Gi : st.Ginv) cert.multipliers.push_back(symmetrize(mu / s * Gi));
  const int m = P.num_params;
  cert.box_plus = Vector::Zero(m);
  cert.box_minus = Vector::Zero(m);
  double d = 0.0;
  for (std::size_t bi = 0; bi < P.blocks.size(); ++bi)
    d += (cert.multipliers[bi].cwiseProduct(P.blocks[bi].F0)).sum();
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    for (std::size_t bi = 0; bi < P.blocks.size(); ++bi)
      for (const SparseEntry& e : P.blocks[bi].coeff[i])
        r += e.value * cert.multipliers[bi](e.row, e.col);
    cert.box_plus(i) = std::max(-r, 0.0);
    cert.box_minus(i) = std::max(r, 0.0);
    d += P.box_radius * std::abs(r);
  }
  cert.gap = -d;
  return cert;
}

// Supergradient ascent on t(u) = min_b lambda_min(F_b(u)); last-resort polish.
Vector supergradient_polish(const AffineMatrixProblem& P, Vector u, int steps) {
  const int m = P.num_params;
  if (m == 0) return u;
  Vector best_u = u;
  double best_t = P.margin(u);
  double step0 = 0.1 * P.box_radius;
  for (int k = 0; k < steps; ++k) {
    // active block and its bottom eigenvector
    double worst = std::numeric_limits<double>::infinity();
    Vector v;
    int worst_b = 0;
    for (std::size_t bi = 0; bi < P.blocks.size(); ++bi) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(P.blocks[bi].value(u)));
      if (es.eigenvalues()(0) < worst) {
        worst = es.eigenvalues()(0);
        v = es.eigenvectors().col(0);
        worst_b = static_cast<int>(bi);
      }
    }
    if (worst > best_t) {
      best_t = worst;
      best_u = u;
    }
    Vector s = Vector::Zero(m);
    for (int i = 0; i < m; ++i)
      for (const SparseEntry& e : P.blocks[worst_b].coeff[i])
        s(i) += e.value * v(e.row) * v(e.col);
    const double ns = s.norm();
    if (ns < 1e-14) break;
    u += (step0 / std::sqrt(k + 1.0)) * s / ns;
    for (int i = 0; i < m; ++i)
      u(i) = std::clamp(u(i), -0.999 * P.box_radius, 0.999 * P.box_radius);
  }
  return best_u;
}

}  // namespace

Verdict solve(const AffineMatrixProblem& P, const SdpConfig& cfg) {
  P.check();
  if (P.total_dim() > cfg.dim_cap)
    throw DimensionError("solve: flattened dimension " + std::to_string(P.total_dim()) +
                         " exceeds cap " + std::to_string(cfg.dim_cap));
  Verdict out;
  const int m = P.num_params;

  Vector u = Vector::Zero(m);
  double t0 = P.margin(u) - 1.0;
  double t = t0;

  // barrier parameter nu: one unit per block dimension plus two per box bound
  double nu = P.total_dim() + 2.0 * m;
  const double mu_final = std::max(1e-13, 1e-2 * cfg.tol / nu);
  double mu = std::max(1.0, std::abs(t0));

  int iters = 0;
  bool stalled = false;
  BarrierState st = factorize(P, u, t);
  if (!st.feasible) throw NumericalError("solve: initial point not feasible (unexpected)");

  Vector grad;
  Matrix hess;
  while (true) {
    bool stage_done = false;
    while (!stage_done) {
      if (iters >= cfg.max_newton) break;
      ++iters;
      derivatives(P, st, u, mu, grad, hess);
      Matrix H = -hess;
      Eigen::LDLT<Matrix> ldlt(H);
      double ridge = 1e-12 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
      while (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
        H.diagonal().array() += ridge;
        ridge *= 100.0;
        ldlt.compute(H);
        if (ridge > 1e6) break;
      }
      Vector dz = ldlt.solve(grad);
      double lambda2 = grad.dot(dz);
      if (!std::isfinite(lambda2) || lambda2 < 0) lambda2 = 0;
      const double lambda = std::sqrt(lambda2);
      // center tightly on the last stage, loosely along the path
      const double stage_tol = (mu <= mu_final) ? 1e-2 : 0.25;
      if (lambda <= stage_tol) {
        stage_done = true;
        break;
      }
      double alpha = (lambda > 1.0) ? 1.0 / (1.0 + lambda) : 1.0;
      const double psi0 = barrier_value(P, st, u, t, mu);
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        Vector u_new = u + alpha * dz.head(m);
        double t_new = t + alpha * dz(m);
        if (in_box(P, u_new)) {
          BarrierState st_new = factorize(P, u_new, t_new);
          if (st_new.feasible) {
            double psi1 = barrier_value(P, st_new, u_new, t_new, mu);
            if (psi1 >= psi0 + 1e-4 * alpha * grad.dot(dz)) {
              u = std::move(u_new);
              t = t_new;
              st = std::move(st_new);
              accepted = true;
              break;
            }
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        stalled = true;
        stage_done = true;
      }
    }
    if (iters >= cfg.max_newton || stalled) break;
    if (mu <= mu_final) break;
    mu = std::max(mu * 0.2, mu_final);
  }

  if (stalled) {
    u = supergradient_polish(P, u, 300);
    out.note = "newton stalled; supergradient fallback used";
  }
  if (iters >= cfg.max_newton && mu > mu_final * 10)
    out.note = "iteration cap reached before path converged";

  out.newton_iterations = iters;
  out.point = u;
  out.margin = P.margin(u);

  if (out.margin > cfg.eps_feas) {
    out.status = FeasStatus::StrictlyFeasible;
  } else if (out.margin < -cfg.eps_feas && !stalled && mu <= mu_final * 10) {
    InfeasibilityCertificate cert = extract_certificate(P, st, mu);
    if (cert.gap > 0 && verify_certificate(cert, P, 1e-6)) {
      out.status = FeasStatus::Infeasible;
      out.certificate = std::move(cert);
    } else {
      out.status = FeasStatus::Marginal;
      out.note += "; infeasible margin but certificate did not verify";
    }
  } else {
    out.status = FeasStatus::Marginal;
  }
  return out;
}

bool verify_certificate(const InfeasibilityCertificate& cert, const AffineMatrixProblem& P,
                        double tol) {
  if (static_cast<int>(cert.multipliers.size()) != static_cast<int>(P.blocks.size()))
    throw DimensionError("verify_certificate: multiplier count mismatch");
  if (cert.box_plus.size() != P.num_params || cert.box_minus.size() != P.num_params)
    throw DimensionError("verify_certificate: box dual length mismatch");
  if (!(cert.gap > 0)) return false;
  double scale = 0.0;
  for (std::size_t bi = 0; bi < P.blocks.size(); ++bi) {
    const Matrix& L = cert.multipliers[bi];
    if (L.rows() != P.blocks[bi].dim() || L.cols() != P.blocks[bi].dim())
      throw DimensionError("verify_certificate: multiplier size mismatch");
    if (min_eig(L) < -tol) return false;
    scale += std::abs(L.trace());
  }
  scale = std::max(scale, 1.0);
  for (int i = 0; i < P.num_params; ++i) {
    if (cert.box_plus(i) < -tol || cert.box_minus(i) < -tol) return false;
    double r = cert.box_plus(i) - cert.box_minus(i);
    for (std::size_t bi = 0; bi < P.blocks.size(); ++bi)
      for (const SparseEntry& e : P.blocks[bi].coeff[i])
        r += e.value * cert.multipliers[bi](e.row, e.col);
    if (std::abs(r) > tol * scale) return false;
  }
  double d = 0.0;
  for (std::size_t bi = 0; bi < P.blocks.size(); ++bi)
    d += (cert.multipliers[bi].cwiseProduct(P.blocks[bi].F0)).sum();
  d += P.box_radius * (cert.box_plus.sum() + cert.box_minus.sum());
  return std::abs(d + cert.gap) <= tol * std::max(1.0, std::abs(cert.gap));
}

std::string dump_problem(const AffineMatrixProblem& P) {
  std::ostringstream os;
  os << "{\"num_params\":" << P.num_params << ",\"box_radius\":" << P.box_radius
     << ",\"labels\":[";
  for (std::size_t i = 0; i < P.labels.size(); ++i)
    os << (i ? "," : "") << "\"" << P.labels[i] << "\"";
  os << "],\"blocks\":[";
  for (std::size_t bi = 0; bi < P.blocks.size(); ++bi) {
    os << (bi ? "," : "") << "{\"dim\":" << P.blocks[bi].dim() << ",\"F0\":[";
    const Matrix& F0 = P.blocks[bi].F0;
    for (Eigen::Index r = 0; r < F0.rows(); ++r) {
      os << (r ? "," : "") << "[";
      for (Eigen::Index c = 0; c < F0.cols(); ++c) os << (c ? "," : "") << F0(r, c);
      os << "]";
    }
    os << "]}";
  }
  os << "]}";
  return os.str();
}

}  // namespace freehull
