#pragma once

#include "freehull/moments.hpp"
#include "freehull/pencils.hpp"
#include "freehull/poly.hpp"
#include "freehull/sdp.hpp"

#include <optional>
#include <vector>

namespace freehull {

/// Free scalar parameters of a relaxation: one block of parameters per moment
/// class {alpha, alpha*} of degree >= 2, symmetric-packed for palindromes.
/// Degree 0 and 1 moments are fixed by the substitutions Y_empty = I,
/// Y_{x_j} = X_j.
struct MomentParamSpace {
  struct ClassInfo {
    Word rep;
    bool palindromic;
    int offset;  // first scalar parameter index
    int count;
  };

  int g = 0, n = 0, max_deg = 0;
  std::vector<ClassInfo> classes;
  int num_params = 0;

  static MomentParamSpace build(int g, int n, int max_deg);

  /// Index of the scalar parameter holding Y_rep(r, c).
  int param_index(const ClassInfo& cls, int r, int c) const;

  int class_index(const Word& rep) const;

  Vector pack(const MomentSequence& Y) const;
  MomentSequence unpack(const MatrixTuple& X, const Vector& u) const;

  std::vector<std::string> labels() const;
};

/// The level-d relaxation of D_p at matrix size n:
///   H_{d + ceil(deg p / 2)}(Y) >= 0  and  H_loc_{p,d}(Y) >= 0,
/// affine in the free moment entries.
struct RelaxationProblem {
  MatrixPoly p{1};
  int d = 0, n = 0;
  int hankel_level = 0;  // d + ceil(deg p / 2)
  int moment_cap = 0;    // 2 * hankel_level, the largest degree any constraint reads
  MomentParamSpace params;
};

struct AssembledRelaxation {
  RelaxationProblem relaxation;
  AffineMatrixProblem problem;  // block 0 = Hankel, block 1 = localizing
};

struct RelaxConfig {
  double archimedean_C = 0.0;  // growth constant; 0 = unknown
  double box_radius = 0.0;     // 0 = derive from archimedean_C, else 1e3
  SdpConfig sdp;
  double witness_tol = 1e-6;
};

double relax_box_radius(const RelaxConfig& cfg, int moment_cap);

AssembledRelaxation assemble(const MatrixPoly& p, int n, int d, const MatrixTuple& X,
                             double box_radius);

struct MembershipResult {
  Verdict verdict;
  std::optional<MomentSequence> witness;  // present when not Infeasible
};

/// Decides X in the projection of the level-d relaxation. StrictlyFeasible
/// comes with a witness moment sequence rebuilt from the maximizer;
/// Infeasible is certified relative to the box radius, so the box must sit
/// above the moment growth bound before it can be read as true non-membership.
MembershipResult membership(const MatrixPoly& p, const MatrixTuple& X, int d,
                            const RelaxConfig& cfg = {});

/// Scalar-affine separation certificate ell(X') = c0 + sum_j tr(C_j X'_j),
/// extracted from the dual multipliers of an Infeasible membership verdict.
/// Nonnegative on every tuple with a feasible witness inside the box, negative
/// at the separated point.
struct SeparationFunctional {
  double c0 = 0.0;
  std::vector<Matrix> C;
  std::string provenance;  // certificate hash

  double eval(const MatrixTuple& X) const;
};

SeparationFunctional separate(const MatrixPoly& p, const MatrixTuple& X, int d,
                              const RelaxConfig& cfg = {});

/// Linear matrix polynomial Delta(x, y) = A0 + sum A_j x_j + sum (B_l y_l + B_l^T y_l^T)
/// whose positivity set is the level-d relaxation; lifted variables are the
/// moment classes (symmetric variable per palindromic class, free otherwise).
struct MixedPencil {
  int size = 0;
  int g = 0;
  Matrix A0;
  std::vector<Matrix> A;
  struct LiftedVar {
    Word rep;
    bool palindromic;
    Matrix B;
  };
  std::vector<LiftedVar> lifted;
};

MixedPencil build_mixed_pencil(const MatrixPoly& p, int d);

/// Kronecker-form evaluation of Delta at (X, one matrix per lifted class).
Matrix mixed_pencil_eval(const MixedPencil& delta, const MatrixTuple& X,
                         const std::vector<Matrix>& ys);

/// Real symmetrization: each B_l splits into C_l = (B_l + B_l^T)/2 paired with
/// a symmetric variable and D_l = (B_l - B_l^T)/2 paired with a skew variable;
/// slots with identically zero coefficients are dropped. For y = W + V the
/// evaluations of Delta and the result agree.
AffinePencil split_symmetrize(const MixedPencil& delta);

struct MonicLift {
  AffinePencil pencil;  // monic
  Vector x_shift;       // original x = new x + x_shift
  Vector y_shift;
  Matrix congruence;    // S with L_new = (S (x) I) L_old(translated) (S (x) I)
};

/// Translates variables by a strictly feasible scalar point and applies the
/// congruence by the inverse principal square root of the constant term.
MonicLift monic_normalize(const AffinePencil& pencil, const Vector& x_hat,
                          const Vector& y_hat);

/// Membership of q in the truncated quadratic module M_{alpha,beta}(p):
/// q = sum s_i^* s_i + sum f_j^* p f_j with deg s_i <= alpha, deg f_j <= beta,
/// encoded by two PSD Gram matrices subject to exact coefficient matching.
struct QuadModuleCertificate {
  std::vector<Word> sos_basis;
  Matrix sos_gram;  // PSD over sos_basis
  std::vector<Word> loc_basis;
  Matrix loc_gram;  // PSD over loc_basis (x) R^l, paired with p
};

struct QuadModuleResult {
  bool found = false;
  std::optional<QuadModuleCertificate> certificate;
  std::optional<Verdict> solver_verdict;  // attached on NotFound
  std::string note;
};

QuadModuleResult quad_module_membership(const MatrixPoly& q, const MatrixPoly& p, int alpha,
                                        int beta, const RelaxConfig& cfg = {});

/// Rebuilds sum s^*s + sum f^*pf from the certificate's Grams and returns the
/// coefficient residual against q.
double quad_module_residual(const QuadModuleCertificate& cert, const MatrixPoly& q,
                            const MatrixPoly& p);

/// Exact coefficient check of K^2 - sum_j x_j^2 = sum s_j^* s_j + sum f_j^* p f_j.
bool verify_archimedean_identity(double K2, const MatrixPoly& p,
                                 const std::vector<MatrixPoly>& s,
                                 const std::vector<MatrixPoly>& f);

}  // namespace freehull
