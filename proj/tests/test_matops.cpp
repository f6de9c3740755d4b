#include "freehull/matops.hpp"

#include "freehull/random.hpp"

#include <doctest.h>

using namespace freehull;

namespace {

// independent oracle: Cholesky with diagonal pivoting; succeeds iff the matrix
// is PSD up to the tolerance
bool psd_by_pivoted_cholesky(Matrix a, double tol) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (a(i, i) > a(piv, piv)) piv = i;
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      a.col(k).swap(a.col(piv));
    }
    const double d = a(k, k);
    if (d <= tol) {
      // remaining block must be negligible for PSD
      double rest = 0.0;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) rest = std::max(rest, std::abs(a(i, j)));
      return rest <= 10 * n * tol;
    }
    for (int i = k + 1; i < n; ++i) {
      const double l = a(i, k) / d;
      for (int j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("sym_eig on the frozen 2x2 oracles") {
  SymEig e = sym_eig((Matrix(2, 2) << 2, 1, 1, 1).finished());
  // characteristic polynomial lambda^2 - 3 lambda + 1
  CHECK(e.values(0) == doctest::Approx((3 - std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(e.values(1) == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-12));

  e = sym_eig((Matrix(2, 2) << 4, 3, 3, 2).finished());
  // characteristic polynomial lambda^2 - 6 lambda - 1
  CHECK(e.values(0) == doctest::Approx(3 - std::sqrt(10.0)).epsilon(1e-12));
  CHECK(e.values(1) == doctest::Approx(3 + std::sqrt(10.0)).epsilon(1e-12));

  e = sym_eig(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(e.values(i) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig reconstruction on random symmetric matrices") {
  Rng rng(7);
  for (int dim : {2, 5, 17, 40}) {
    Matrix m = rng.sym(dim, 2.0);
    SymEig e = sym_eig(m);
    Matrix rec = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + m.operatorNorm()));
    for (Eigen::Index i = 0; i + 1 < e.values.size(); ++i)
      CHECK(e.values(i) <= e.values(i + 1));
  }
  CHECK_THROWS_AS(sym_eig(Matrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("is_psd basics and min_eig reporting") {
  PsdReport r = is_psd(Matrix::Zero(3, 3), 1e-9);
  CHECK(r.psd);
  CHECK(r.min_eig == doctest::Approx(0.0));

  r = is_psd((Matrix(2, 2) << 4, 3, 3, 2).finished(), 1e-9);
  CHECK(!r.psd);
  CHECK(r.min_eig == doctest::Approx(3 - std::sqrt(10.0)).epsilon(1e-10));

  r = is_psd((Matrix(2, 2) << 1, 1, 1, 1).finished(), 1e-9);
  CHECK(r.psd);
  CHECK(r.min_eig == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("is_psd agrees with a pivoted-Cholesky oracle on 1000 random matrices") {
  Rng rng(11);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 2 + (k % 5);
    Matrix m = rng.sym(n);
    if (k % 3 == 0) m = Matrix(m * m.transpose());  // force PSD
    if (k % 7 == 0) {
      // rank-deficient PSD
      Matrix v = rng.gauss_matrix(n, 1);
      m = v * v.transpose();
    }
    PsdReport r = is_psd(m, 1e-9);
    // skip razor-edge cases where both sides legitimately disagree
    if (std::abs(r.min_eig) < 1e-10) continue;
    ++checked;
    CHECK(r.psd == psd_by_pivoted_cholesky(m, 1e-12));
  }
  CHECK(checked > 800);
}

TEST_CASE("principal_sqrt") {
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 4, 9;
  Matrix r = principal_sqrt(d);
  CHECK(r(0, 0) == doctest::Approx(2.0));
  CHECK(r(1, 1) == doctest::Approx(3.0));

  CHECK((principal_sqrt(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);

  // I - W^2 for W = mu [[2,1],[1,1]]: eigenvalues 0 and 1 - mu^4
  const double mu = (3 - std::sqrt(5.0)) / 2;
  Matrix W = mu * (Matrix(2, 2) << 2, 1, 1, 1).finished();
  Matrix s = principal_sqrt(Matrix::Identity(2, 2) - W * W);
  SymEig e = sym_eig(s);
  CHECK(e.values(0) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(e.values(1) == doctest::Approx(std::sqrt(1 - std::pow(mu, 4))).epsilon(1e-10));

  CHECK_THROWS_AS(principal_sqrt((Matrix(2, 2) << 4, 3, 3, 2).finished()), NumericalError);

  Rng rng(3);
  for (int dim : {3, 16, 64}) {
    Matrix a = rng.gauss_matrix(dim, dim);
    Matrix m = a * a.transpose();
    Matrix rt = principal_sqrt(m);
    CHECK(min_eig(rt) >= -1e-10);
    CHECK((rt * rt - m).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + m.operatorNorm()));
  }
}

TEST_CASE("kron") {
  CHECK((kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) - Matrix::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  Matrix x = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1, 2;
  Matrix k = kron(x, d);
  Matrix expect = Matrix::Zero(4, 4);
  expect.block(0, 2, 2, 2) = d;
  expect.block(2, 0, 2, 2) = d;
  CHECK((k - expect).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(5);
  Matrix a = rng.gauss_matrix(2, 3), b = rng.gauss_matrix(3, 2), c = rng.gauss_matrix(4, 2),
         e = rng.gauss_matrix(2, 4);
  CHECK(kron(a, c).rows() == a.rows() * c.rows());
  CHECK(kron(a, c).cols() == a.cols() * c.cols());
  // mixed-product identity (A (x) B)(C (x) D) = AC (x) BD
  Matrix lhs = kron(a, c) * kron(b, e);
  Matrix rhs = kron(Matrix(a * b), Matrix(c * e));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("block matrix flattening is deterministic") {
  std::vector<Word> labels = enumerate_words(2, 1);
  BlockMatrix bm(labels, labels, 2, 2);
  bm.block(0, 1) << 1, 2, 3, 4;
  CHECK(bm.flat()(0, 2) == 1);
  CHECK(bm.flat()(1, 3) == 4);
  CHECK(bm.rows() == 3);
  CHECK(bm.row_dim() == 2);
}
