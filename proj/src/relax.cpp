#include "freehull/relax.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>

namespace freehull {

namespace {

int hankel_level_for(const MatrixPoly& p, int d) { return d + (p.degree() + 1) / 2; }

// Scalar-level placements of both constraint blocks: block 0 is the Hankel,
// block 1 the localizing matrix. (I, J) index pencil coefficient rows/cols,
// i.e. words for the Hankel and word x coefficient-row pairs for the
// localizing block.
struct Placement {
  int block;
  int I, J;
  double value;
  Word word;
};

std::vector<Placement> relaxation_placements(const MatrixPoly& p, int d) {
  std::vector<Placement> out;
  const int g = p.g();
  const int lvl = hankel_level_for(p, d);
  for_each_hankel_block(g, lvl, [&](int i, int j, const Word& w) {
    out.push_back({0, i, j, 1.0, w});
  });
  const int l = p.block_dim();
  for_each_localizing_block(p, d, [&](int i, int j, const Matrix& pg, const Word& w) {
    for (int a = 0; a < l; ++a)
      for (int b = 0; b < l; ++b)
        if (pg(a, b) != 0.0) out.push_back({1, i * l + a, j * l + b, pg(a, b), w});
  });
  return out;
}

}  // namespace

MomentParamSpace MomentParamSpace::build(int g, int n, int max_deg) {
  MomentParamSpace sp;
  sp.g = g;
  sp.n = n;
  sp.max_deg = max_deg;
  int off = 0;
  for (const Word& w : enumerate_words(g, max_deg)) {
    if (w.degree() < 2 || w != w.class_rep()) continue;
    const bool pal = w.is_palindrome();
    const int cnt = pal ? n * (n + 1) / 2 : n * n;
    sp.classes.push_back(ClassInfo{w, pal, off, cnt});
    off += cnt;
  }
  sp.num_params = off;
  return sp;
}

int MomentParamSpace::param_index(const ClassInfo& cls, int r, int c) const {
  if (!cls.palindromic) return cls.offset + r * n + c;
  const int a = std::min(r, c), b = std::max(r, c);
  // packed upper triangle, row-major
  return cls.offset + a * n - a * (a - 1) / 2 + (b - a);
}

int MomentParamSpace::class_index(const Word& rep) const {
  for (int k = 0; k < static_cast<int>(classes.size()); ++k)
    if (classes[k].rep == rep) return k;
  throw DimensionError("MomentParamSpace: unknown class " + rep.str());
}

Vector MomentParamSpace::pack(const MomentSequence& Y) const {
  if (Y.g() != g || Y.n() != n || Y.max_deg() < max_deg)
    throw DimensionError("MomentParamSpace::pack: sequence shape mismatch");
  Vector u = Vector::Zero(num_params);
  for (const ClassInfo& cls : classes) {
    Matrix v = Y.get(cls.rep);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) u(param_index(cls, r, c)) = v(r, c);
  }
  return u;
}

MomentSequence MomentParamSpace::unpack(const MatrixTuple& X, const Vector& u) const {
  if (X.g() != g || X.n() != n) throw DimensionError("MomentParamSpace::unpack: X mismatch");
  if (u.size() != num_params) throw DimensionError("MomentParamSpace::unpack: u size");
  MomentSequence Y(g, n, max_deg);
  for (int j = 1; j <= g; ++j) Y.set(Word::letter(j), X[j - 1]);
  for (const ClassInfo& cls : classes) {
    Matrix v(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) v(r, c) = u(param_index(cls, r, c));
    Y.set(cls.rep, v);
  }
  return Y;
}

std::vector<std::string> MomentParamSpace::labels() const {
  std::vector<std::string> out(num_params);
  for (const ClassInfo& cls : classes)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        out[param_index(cls, r, c)] =
            "Y[" + cls.rep.str() + "](" + std::to_string(cls.palindromic ? std::min(r, c) : r) +
            "," + std::to_string(cls.palindromic ? std::max(r, c) : c) + ")";
  return out;
}

double relax_box_radius(const RelaxConfig& cfg, int moment_cap) {
  if (cfg.box_radius > 0) return cfg.box_radius;
  if (cfg.archimedean_C > 0) return 2.0 * std::pow(cfg.archimedean_C, moment_cap);
  return 1e3;
}

AssembledRelaxation assemble(const MatrixPoly& p, int n, int d, const MatrixTuple& X,
                             double box_radius) {
  if (!p.is_symmetric(1e-12)) throw DimensionError("assemble: p must be symmetric");
  if (X.g() != p.g() || X.n() != n) throw DimensionError("assemble: X has wrong shape");
  if (d < 0) throw DimensionError("assemble: need d >= 0");

  AssembledRelaxation out;
  RelaxationProblem& rel = out.relaxation;
  rel.p = p;
  rel.d = d;
  rel.n = n;
  rel.hankel_level = hankel_level_for(p, d);
  rel.moment_cap = 2 * rel.hankel_level;
  rel.params = MomentParamSpace::build(p.g(), n, rel.moment_cap);

  const int NH = static_cast<int>(count_words(p.g(), rel.hankel_level));
  const int NL = static_cast<int>(count_words(p.g(), d)) * p.block_dim();

  AffineMatrixProblem& P = out.problem;
  P.num_params = rel.params.num_params;
  P.box_radius = box_radius;
  P.labels = rel.params.labels();
  P.blocks.resize(2);
  P.blocks[0].F0 = Matrix::Zero(NH * n, NH * n);
  P.blocks[0].coeff.resize(P.num_params);
  P.blocks[1].F0 = Matrix::Zero(NL * n, NL * n);
  P.blocks[1].coeff.resize(P.num_params);

  const Matrix id = Matrix::Identity(n, n);
  for (const Placement& pl : relaxation_placements(p, d)) {
    AffineBlock& blk = P.blocks[pl.block];
    const int R = pl.I * n, C = pl.J * n;
    if (pl.word.is_empty()) {
      blk.F0.block(R, C, n, n) += pl.value * id;
    } else if (pl.word.degree() == 1) {
      blk.F0.block(R, C, n, n) += pl.value * X[pl.word.letters()[0] - 1];
    } else {
      const Word rep = pl.word.class_rep();
      const auto& cls = rel.params.classes[rel.params.class_index(rep)];
      const bool transposed = (pl.word != rep);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          // Y_w(r,c) = Y_rep(r,c) or Y_rep(c,r) when w = rep*
          const int idx = transposed ? rel.params.param_index(cls, c, r)
                                     : rel.params.param_index(cls, r, c);
          blk.coeff[idx].push_back(SparseEntry{R + r, C + c, pl.value});
        }
    }
  }
  return out;
}

MembershipResult membership(const MatrixPoly& p, const MatrixTuple& X, int d,
                            const RelaxConfig& cfg) {
  AssembledRelaxation asm_ = assemble(p, X.n(), d, X,
                                      relax_box_radius(cfg, 2 * hankel_level_for(p, d)));
  MembershipResult out;
  out.verdict = solve(asm_.problem, cfg.sdp);
  if (out.verdict.status != FeasStatus::Infeasible) {
    MomentSequence Y = asm_.relaxation.params.unpack(X, out.verdict.point);
    if (out.verdict.status == FeasStatus::StrictlyFeasible) {
      // re-verify the witness against freshly built constraint matrices
      const double lm_h = min_eig(build_hankel(Y, asm_.relaxation.hankel_level).flat());
      const double lm_l = min_eig(build_localizing(p, Y, d).flat());
      if (std::min(lm_h, lm_l) < -cfg.witness_tol)
        throw NumericalError("membership: witness failed re-verification");
    }
    out.witness = std::move(Y);
  }
  return out;
}

double SeparationFunctional::eval(const MatrixTuple& X) const {
  if (static_cast<int>(C.size()) != X.g())
    throw DimensionError("SeparationFunctional: tuple size mismatch");
  double v = c0;
  for (int j = 0; j < X.g(); ++j) v += (C[j].cwiseProduct(X[j])).sum();
  return v;
}

SeparationFunctional separate(const MatrixPoly& p, const MatrixTuple& X, int d,
                              const RelaxConfig& cfg) {
  const double R = relax_box_radius(cfg, 2 * hankel_level_for(p, d));
  AssembledRelaxation asm_ = assemble(p, X.n(), d, X, R);
  Verdict v = solve(asm_.problem, cfg.sdp);
  if (v.status != FeasStatus::Infeasible || !v.certificate)
    throw NumericalError("separate: membership did not return Infeasible");
  const InfeasibilityCertificate& cert = *v.certificate;

  // ell(X') = sum_b tr(Lambda_b F0^{(b)}(X')) + R * sum(lambda+ + lambda-);
  // affine in X', extracted against basis tuples.
  const int n = X.n(), g = X.g();
  auto ell_raw = [&](const MatrixTuple& Xp) {
    AssembledRelaxation a2 = assemble(p, n, d, Xp, R);
    double s = 0.0;
    for (int b = 0; b < 2; ++b)
      s += (cert.multipliers[b].cwiseProduct(a2.problem.blocks[b].F0)).sum();
    return s + R * (cert.box_plus.sum() + cert.box_minus.sum());
  };

  SeparationFunctional f;
  MatrixTuple zero(g, n);
  f.c0 = ell_raw(zero);
  for (int j = 0; j < g; ++j) {
    Matrix Cj = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        MatrixTuple E(g, n);
        E[j](a, b) = 1.0;
        E[j](b, a) = 1.0;
        const double val = ell_raw(E) - f.c0;  // tr(C_j E_ab)
        if (a == b)
          Cj(a, a) = val;
        else
          Cj(a, b) = Cj(b, a) = val / 2.0;
      }
    f.C.push_back(Cj);
  }

  // provenance: hash of the dual data
  std::size_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](double x) {
    std::size_t b;
    static_assert(sizeof(b) == sizeof(x));
    std::memcpy(&b, &x, sizeof(x));
    h = (h ^ b) * 0x100000001b3ull;
  };
  for (const Matrix& L : cert.multipliers)
    for (Eigen::Index i = 0; i < L.size(); ++i) mix(L(i));
  mix(cert.gap);
  std::ostringstream os;
  os << std::hex << h;
  f.provenance = os.str();

  if (!(f.eval(X) < 0))
    throw NumericalError("separate: extracted functional is not negative at the point");
  return f;
}

MixedPencil build_mixed_pencil(const MatrixPoly& p, int d) {
  if (!p.is_symmetric(1e-12)) throw DimensionError("build_mixed_pencil: p must be symmetric");
  MixedPencil delta;
  delta.g = p.g();
  const int NH = static_cast<int>(count_words(p.g(), hankel_level_for(p, d)));
  const int NL = static_cast<int>(count_words(p.g(), d)) * p.block_dim();
  delta.size = NH + NL;  // block-diagonal pencil: Hankel then localizing
  delta.A0 = Matrix::Zero(delta.size, delta.size);
  delta.A.assign(p.g(), Matrix::Zero(delta.size, delta.size));

  const int cap = 2 * hankel_level_for(p, d);
  for (const Word& w : enumerate_words(p.g(), cap)) {
    if (w.degree() < 2 || w != w.class_rep()) continue;
    delta.lifted.push_back(
        MixedPencil::LiftedVar{w, w.is_palindrome(), Matrix::Zero(delta.size, delta.size)});
  }
  auto lifted_index = [&](const Word& rep) {
    for (std::size_t k = 0; k < delta.lifted.size(); ++k)
      if (delta.lifted[k].rep == rep) return static_cast<int>(k);
    throw DimensionError("build_mixed_pencil: class lookup failed");
  };

  for (const Placement& pl : relaxation_placements(p, d)) {
    const int I = pl.I + (pl.block == 1 ? NH : 0);
    const int J = pl.J + (pl.block == 1 ? NH : 0);
    if (pl.word.is_empty()) {
      delta.A0(I, J) += pl.value;
    } else if (pl.word.degree() == 1) {
      delta.A[pl.word.letters()[0] - 1](I, J) += pl.value;
    } else if (pl.word.is_palindrome()) {
      // each mirrored occurrence carries half; B + B^T restores the weight
      delta.lifted[lifted_index(pl.word)].B(I, J) += pl.value / 2.0;
    } else if (pl.word == pl.word.class_rep()) {
      delta.lifted[lifted_index(pl.word)].B(I, J) += pl.value;
    }
    // occurrences of rep* are covered by the B^T y^T term of the rep occurrence
  }
  return delta;
}

Matrix mixed_pencil_eval(const MixedPencil& delta, const MatrixTuple& X,
                         const std::vector<Matrix>& ys) {
  if (X.g() != delta.g) throw DimensionError("mixed_pencil_eval: variable count mismatch");
  if (ys.size() != delta.lifted.size())
    throw DimensionError("mixed_pencil_eval: expected one value per lifted class");
  const int n = X.n();
  Matrix out = kron(delta.A0, Matrix::Identity(n, n));
  for (int j = 0; j < delta.g; ++j) out += kron(delta.A[j], X[j]);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (ys[k].rows() != n || ys[k].cols() != n)
      throw DimensionError("mixed_pencil_eval: lifted value size mismatch");
    out += kron(delta.lifted[k].B, ys[k]);
    out += kron(delta.lifted[k].B.transpose(), ys[k].transpose());
  }
  return out;
}

AffinePencil split_symmetrize(const MixedPencil& delta) {
  AffinePencil L;
  L.size = delta.size;
  L.g = delta.g;
  L.A0 = delta.A0;
  L.A = delta.A;
  for (const MixedPencil::LiftedVar& v : delta.lifted) {
    Matrix C = v.B + v.B.transpose();   // pairs with the symmetric part of y
    Matrix D = v.B - v.B.transpose();   // pairs with the skew part of y
    if (C.cwiseAbs().maxCoeff() > 0.0) L.lifted.push_back({C, false});
    if (D.cwiseAbs().maxCoeff() > 0.0) L.lifted.push_back({D, true});
  }
  return L;
}

MonicLift monic_normalize(const AffinePencil& pencil, const Vector& x_hat,
                          const Vector& y_hat) {
  pencil.check();
  if (x_hat.size() != pencil.g || y_hat.size() != static_cast<Eigen::Index>(pencil.lifted.size()))
    throw DimensionError("monic_normalize: strict point has wrong shape");
  Matrix P0 = pencil.A0;
  for (int j = 0; j < pencil.g; ++j) P0 += x_hat(j) * pencil.A[j];
  for (std::size_t l = 0; l < pencil.lifted.size(); ++l) {
    if (pencil.lifted[l].skew && y_hat(l) != 0.0)
      throw DimensionError("monic_normalize: skew slots need zero scalar shift");
    P0 += y_hat(l) * pencil.lifted[l].coeff;
  }
  P0 = symmetrize(P0);
  if (min_eig(P0) < 1e-6)
    throw NumericalError("monic_normalize: strict point is not strictly feasible");

  // scale by the inverse principal square root of the translated constant term
  SymEig eig = sym_eig(P0);
  Vector dinv = eig.values.cwiseSqrt().cwiseInverse();
  Matrix S = symmetrize(eig.vectors * dinv.asDiagonal() * eig.vectors.transpose());

  MonicLift out;
  out.x_shift = x_hat;
  out.y_shift = y_hat;
  out.congruence = S;
  out.pencil.size = pencil.size;
  out.pencil.g = pencil.g;
  out.pencil.A0 = Matrix::Identity(pencil.size, pencil.size);
  for (int j = 0; j < pencil.g; ++j) out.pencil.A.push_back(symmetrize(S * pencil.A[j] * S));
  for (const AffinePencil::Slot& s : pencil.lifted) {
    Matrix c = S * s.coeff * S;
    c = s.skew ? Matrix(0.5 * (c - c.transpose())) : symmetrize(c);
    out.pencil.lifted.push_back({c, s.skew});
  }
  return out;
}

bool verify_archimedean_identity(double K2, const MatrixPoly& p,
                                 const std::vector<MatrixPoly>& s,
                                 const std::vector<MatrixPoly>& f) {
  const int g = p.g();
  MatrixPoly residual = MatrixPoly::constant(g, K2);
  for (int j = 1; j <= g; ++j) {
    MatrixPoly xj = MatrixPoly::variable(g, j);
    residual = residual - xj * xj;
  }
  for (const MatrixPoly& sj : s) residual = residual - sj.involution() * sj;
  for (const MatrixPoly& fj : f) residual = residual - fj.involution() * p * fj;
  return residual.is_zero();
}

}  // namespace freehull
