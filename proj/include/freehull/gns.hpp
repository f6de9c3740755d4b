#pragma once

#include "freehull/moments.hpp"
#include "freehull/poly.hpp"

#include <optional>
#include <vector>

namespace freehull {

/// Finite-dimensional representing tuple recovered from a flat truncated
/// moment sequence: Z acts on the quotient of the word space by the kernel of
/// the moment form, Q embeds the level space, and Q^T Z^alpha Q reproduces the
/// moments up to degree 2(d-1).
struct GnsResult {
  std::vector<Matrix> Z;       // symmetric within ~1e-8, dim = rank H_{d-1}
  Matrix Q;                    // isometry into the quotient, Q^T Q = I
  std::vector<int> rank_profile;  // ranks of H_k(Y), k = 0..d
  double moment_mismatch = 0.0;   // max over |alpha| <= 2(d-1)
  double p_min_eig = 0.0;         // lambda_min(p(Z)) when p was supplied
  double z_asymmetry = 0.0;       // max_j ||Z_j - Z_j^T||

  MatrixTuple symmetrized_tuple() const;
};

struct GnsOptions {
  double rank_tol = 1e-8;  // relative eigenvalue threshold for numerical rank
  double psd_tol = 1e-9;   // slack allowed on lambda_min(H_d)
  const MatrixPoly* p = nullptr;  // checked against the localizing truncation
};

/// GNS reconstruction from H_d(Y). Requires H_d(Y) PSD within tolerance and
/// flatness rank H_d(Y) = rank H_{d-1}(Y); throws with the rank jump
/// otherwise.
GnsResult reconstruct(const MomentSequence& Y, int d, const GnsOptions& opts = {});

}  // namespace freehull
