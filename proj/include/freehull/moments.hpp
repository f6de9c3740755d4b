#pragma once

#include "freehull/matops.hpp"
#include "freehull/poly.hpp"
#include "freehull/words.hpp"

#include <functional>
#include <map>
#include <vector>

namespace freehull {

/// Tall matrix V with V^T V = I.
class Isometry {
 public:
  explicit Isometry(Matrix v) : v_(std::move(v)) {
    if (v_.rows() < v_.cols()) throw DimensionError("Isometry: need rows >= cols");
    Matrix gram = v_.transpose() * v_;
    if ((gram - Matrix::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff() > 1e-10)
      throw DimensionError("Isometry: V^T V != I within 1e-10");
  }
  int rows() const { return static_cast<int>(v_.rows()); }
  int cols() const { return static_cast<int>(v_.cols()); }
  const Matrix& matrix() const { return v_; }

 private:
  Matrix v_;
};

/// Truncated moment sequence: word -> n x n matrix for all |alpha| <= max_deg,
/// with Y_empty = I and Y_{alpha*} = Y_alpha^T. One matrix is stored per class
/// {alpha, alpha*}; the transpose is materialized on read.
class MomentSequence {
 public:
  MomentSequence(int g, int n, int max_deg);

  int g() const { return g_; }
  int n() const { return n_; }
  int max_deg() const { return max_deg_; }

  /// Y_w; throws if |w| > max_deg.
  Matrix get(const Word& w) const;

  /// Stores at the class representative; palindromic values are symmetrized.
  void set(const Word& w, const Matrix& value);

  /// Class representatives of degree <= max_deg in graded-lex order.
  const std::vector<Word>& class_reps() const { return reps_; }

  /// Checks Y_empty = I and symmetry of palindromic values.
  void validate(double tol = 1e-9) const;

  /// Restriction to a smaller degree cap.
  MomentSequence truncated(int new_max_deg) const;

 private:
  int g_, n_, max_deg_;
  std::vector<Word> reps_;
  std::map<Word, Matrix> values_;  // keyed by class representative
};

/// Y_alpha = V^T Z^alpha V.
MomentSequence moments_from_representation(const MatrixTuple& Z, const Isometry& V,
                                           int max_deg);

/// Visits every block (i, j) of the truncated Hankel over words of degree <= d
/// with its word alpha_i^* beta_j. Shared by the numeric builder and the
/// relaxation assembly so both see the same layout.
void for_each_hankel_block(int g, int d,
                           const std::function<void(int, int, const Word&)>& fn);

/// Same for the localizing matrix: block (i, j) accumulates p_gamma (x) W_w
/// over the terms gamma of p, with w = alpha_i^* gamma beta_j.
void for_each_localizing_block(
    const MatrixPoly& p, int d,
    const std::function<void(int, int, const Matrix&, const Word&)>& fn);

/// H_d(W) = (W_{alpha* beta})_{|alpha|,|beta| <= d}.
BlockMatrix build_hankel(const MomentSequence& W, int d);

/// p-localizing matrix: block (alpha, beta) = sum_gamma p_gamma (x) W_{alpha* gamma beta}.
BlockMatrix build_localizing(const MatrixPoly& p, const MomentSequence& W, int d);

/// Riesz map: sum B_alpha alpha  |->  sum B_alpha (x) W_alpha.
Matrix riesz_apply(const MomentSequence& W, const MatrixPoly& P);

struct GrowthViolation {
  Word word;
  double norm;
  double bound;
};

/// Words alpha with ||W_alpha||_2 > C^{|alpha|} (1 + 1e-6), up to degree max_len.
std::vector<GrowthViolation> growth_bound_check(const MomentSequence& W, double C,
                                                int max_len);

}  // namespace freehull
