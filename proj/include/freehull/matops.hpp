#pragma once

#include "freehull/common.hpp"
#include "freehull/words.hpp"

#include <vector>

namespace freehull {

inline constexpr double kDefaultPsdTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-12;

/// Checks entries[i][j] == entries[j][i] within rtol relative to the largest entry.
bool is_symmetric(const Matrix& m, double rtol = kSymmetryTol);

/// Enforces exact symmetry, (M + M^T)/2.
Matrix symmetrize(const Matrix& m);

struct SymEig {
  Vector values;   // ascending
  Matrix vectors;  // orthogonal, columns are eigenvectors
};

/// Eigendecomposition of a symmetric matrix, M = V diag(values) V^T.
/// Throws DimensionError on a non-square input and NumericalError when the
/// iteration fails to converge.
SymEig sym_eig(const Matrix& m);

struct PsdReport {
  bool psd;
  double min_eig;
};

/// True iff lambda_min(M) >= -tol. Always reports lambda_min.
PsdReport is_psd(const Matrix& m, double tol = kDefaultPsdTol);

/// PSD principal square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
/// anything below that threshold is rejected.
Matrix principal_sqrt(const Matrix& m);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

double min_eig(const Matrix& m);

/// Block matrix with uniform block dimensions and word labels on both sides.
/// The flat layout is fixed by the label orders: block (i, j) occupies rows
/// [i*row_dim, (i+1)*row_dim) and columns [j*col_dim, (j+1)*col_dim).
class BlockMatrix {
 public:
  BlockMatrix(std::vector<Word> row_labels, std::vector<Word> col_labels, int row_dim,
              int col_dim)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        row_dim_(row_dim),
        col_dim_(col_dim),
        flat_(Matrix::Zero(static_cast<Eigen::Index>(row_labels_.size()) * row_dim,
                           static_cast<Eigen::Index>(col_labels_.size()) * col_dim)) {}

  int rows() const { return static_cast<int>(row_labels_.size()); }
  int cols() const { return static_cast<int>(col_labels_.size()); }
  int row_dim() const { return row_dim_; }
  int col_dim() const { return col_dim_; }
  const std::vector<Word>& row_labels() const { return row_labels_; }
  const std::vector<Word>& col_labels() const { return col_labels_; }

  Eigen::Block<Matrix> block(int i, int j) {
    return flat_.block(static_cast<Eigen::Index>(i) * row_dim_,
                       static_cast<Eigen::Index>(j) * col_dim_, row_dim_, col_dim_);
  }
  Eigen::Block<const Matrix> block(int i, int j) const {
    return flat_.block(static_cast<Eigen::Index>(i) * row_dim_,
                       static_cast<Eigen::Index>(j) * col_dim_, row_dim_, col_dim_);
  }

  const Matrix& flat() const { return flat_; }
  Matrix& flat() { return flat_; }

 private:
  std::vector<Word> row_labels_, col_labels_;
  int row_dim_, col_dim_;
  Matrix flat_;
};

}  // namespace freehull
