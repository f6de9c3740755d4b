#include "freehull/moments.hpp"

#include "freehull/json_io.hpp"
#include "freehull/random.hpp"

#include <doctest.h>

using namespace freehull;

namespace {
Word w(const char* s) { return Word::parse(s, 9); }

MomentSequence scalar_point_moments(double x, double y, int max_deg) {
  MatrixTuple Z = MatrixTuple::scalars({x, y});
  return moments_from_representation(Z, Isometry(Matrix::Identity(1, 1)), max_deg);
}
}  // namespace

TEST_CASE("moments from a scalar representation are the classical moments") {
  MomentSequence Y = scalar_point_moments(0.6, 0.5, 4);
  for (const Word& word : enumerate_words(2, 4)) {
    int a = 0, b = 0;
    for (int j : word.letters()) (j == 1 ? a : b)++;
    CHECK(Y.get(word)(0, 0) ==
          doctest::Approx(std::pow(0.6, a) * std::pow(0.5, b)).epsilon(1e-13));
  }
}

TEST_CASE("moments from representation satisfy the structural invariants") {
  Rng rng(21);
  MatrixTuple Z({rng.sym(5, 0.5), rng.sym(5, 0.5)});
  Isometry V(rng.isometry(5, 2));
  MomentSequence Y = moments_from_representation(Z, V, 6);
  Y.validate(1e-12);
  CHECK((Y.get(Word::empty()) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  for (const Word& word : enumerate_words(2, 6))
    CHECK((Y.get(word.involution()) - Y.get(word).transpose()).cwiseAbs().maxCoeff() == 0.0);
  // first moments with V = I are the matrices themselves
  MomentSequence Y2 = moments_from_representation(Z, Isometry(Matrix::Identity(5, 5)), 2);
  CHECK((Y2.get(w("1")) - Z[0]).cwiseAbs().maxCoeff() <= 1e-14);
  // Hankel PSD at every admissible truncation (Gram structure)
  for (int d = 0; d <= 3; ++d) CHECK(min_eig(build_hankel(Y, d).flat()) >= -1e-9);
}

TEST_CASE("direct-sum representation witnesses the crossterm hull") {
  Rng rng(22);
  const int n = 2;
  Matrix X = rng.sym(n), Yv = rng.sym(n);
  MatrixTuple Z({(Matrix(2 * n, 2 * n) << 2 * X, Matrix::Zero(n, n), Matrix::Zero(n, n),
                  Matrix::Zero(n, n))
                     .finished(),
                 (Matrix(2 * n, 2 * n) << Matrix::Zero(n, n), Matrix::Zero(n, n),
                  Matrix::Zero(n, n), 2 * Yv)
                     .finished()});
  Matrix Vm(2 * n, n);
  Vm << Matrix::Identity(n, n) / std::sqrt(2.0), Matrix::Identity(n, n) / std::sqrt(2.0);
  MomentSequence M = moments_from_representation(Z, Isometry(Vm), 4);
  CHECK((M.get(w("1")) - X).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((M.get(w("2")) - Yv).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(min_eig(build_hankel(M, 2).flat()) >= -1e-9);
}

TEST_CASE("Hankel of a scalar point is the rank-one outer product of word values") {
  MomentSequence Y = scalar_point_moments(0.6, 0.5, 4);
  BlockMatrix H = build_hankel(Y, 2);
  REQUIRE(H.rows() == 7);
  Vector m(7);
  const std::vector<Word> words = enumerate_words(2, 2);
  for (int i = 0; i < 7; ++i) m(i) = Y.get(words[i])(0, 0);
  CHECK((H.flat() - m * m.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  // row 5 is the row of alpha = 12, printed as Y_{21} in degree order
  CHECK(H.block(0, 5)(0, 0) == doctest::Approx(Y.get(w("21"))(0, 0)));
}

TEST_CASE("Hankel flat matrix is exactly symmetric and d=0 is the identity block") {
  Rng rng(23);
  MatrixTuple Z({rng.sym(6, 0.6), rng.sym(6, 0.6)});
  MomentSequence Y = moments_from_representation(Z, Isometry(rng.isometry(6, 3)), 6);
  BlockMatrix H = build_hankel(Y, 3);
  CHECK((H.flat() - H.flat().transpose()).cwiseAbs().maxCoeff() == 0.0);
  BlockMatrix H0 = build_hankel(Y, 0);
  CHECK((H0.flat() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(build_hankel(Y, 4), DimensionError);
}

TEST_CASE("localizing matrix reproduces the printed TV-screen entries") {
  const MatrixPoly p = parse_poly("1 - x1^2 - x2^4", 2);
  MomentSequence Y = scalar_point_moments(0.6, 0.5, 6);
  auto mono = [&](const char* word) { return Y.get(w(word))(0, 0); };

  BlockMatrix L0 = build_localizing(p, Y, 0);
  REQUIRE(L0.rows() == 1);
  CHECK(L0.flat()(0, 0) == doctest::Approx(1 - mono("11") - mono("2222")).epsilon(1e-13));

  BlockMatrix L1 = build_localizing(p, Y, 1);
  REQUIRE(L1.rows() == 3);
  CHECK(L1.flat()(0, 0) == doctest::Approx(1 - mono("11") - mono("2222")));
  // (2,3) entry: Y_12 - Y_1112 - Y_122222
  CHECK(L1.flat()(1, 2) == doctest::Approx(mono("12") - mono("1112") - mono("122222")));
  // (1,2): X_1 - Y_111 - Y_22221 ; (2,1): X_1 - Y_111 - Y_12222
  CHECK(L1.flat()(0, 1) == doctest::Approx(mono("1") - mono("111") - mono("22221")));
  CHECK(L1.flat()(1, 0) == doctest::Approx(mono("1") - mono("111") - mono("12222")));

  // p = 1 makes the localizing matrix the Hankel matrix
  BlockMatrix H = build_hankel(Y, 1);
  BlockMatrix Lone = build_localizing(MatrixPoly::constant(2, 1.0), Y, 1);
  CHECK((H.flat() - Lone.flat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("localizing only reads constraint-visible degrees") {
  const MatrixPoly p = parse_poly("1 - x1^2 - x2^4", 2);
  Rng rng(24);
  MatrixTuple Z({rng.sym(4, 0.5), rng.sym(4, 0.5)});
  MomentSequence Y = moments_from_representation(Z, Isometry(rng.isometry(4, 2)), 6);
  CHECK_NOTHROW(build_localizing(p, Y, 1));  // needs exactly 2*1 + 4 = 6
  CHECK_THROWS_AS(build_localizing(p, Y, 2), DimensionError);
}

TEST_CASE("riesz map: identity, affine pencils, and squares") {
  Rng rng(25);
  MatrixTuple Z({rng.sym(5, 0.5), rng.sym(5, 0.5)});
  MomentSequence W = moments_from_representation(Z, Isometry(rng.isometry(5, 2)), 6);

  CHECK((riesz_apply(W, MatrixPoly::constant(2, 1.0)) - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // linearity on affine pencils: Phi(A0 + sum A_j x_j) = A0 (x) I + sum A_j (x) W_j
  MatrixPoly aff(2, 2);
  Matrix A0 = rng.sym(2), A1 = rng.sym(2), A2 = rng.sym(2);
  aff.add_term(Word::empty(), A0);
  aff.add_term(w("1"), A1);
  aff.add_term(w("2"), A2);
  Matrix expect = kron(A0, Matrix::Identity(2, 2)) + kron(A1, W.get(w("1"))) +
                  kron(A2, W.get(w("2")));
  CHECK((riesz_apply(W, aff) - expect).cwiseAbs().maxCoeff() <= 1e-14);

  // Phi(P^*) = Phi(P)^T
  MatrixPoly P(2, 2);
  for (const Word& word : enumerate_words(2, 3)) P.add_term(word, rng.gauss_matrix(2, 2));
  CHECK((riesz_apply(W, P.involution()) - riesz_apply(W, P).transpose())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("riesz factorization identity against the Hankel quadratic form") {
  Rng rng(26);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + (trial % 2), s = 1 + (trial % 3), t = 1 + (trial % 2), d = 2;
    const int m = 4 + (trial % 3);
    MatrixTuple Z({rng.sym(m, 0.6), rng.sym(m, 0.6)});
    MomentSequence W = moments_from_representation(Z, Isometry(rng.isometry(m, n)), 2 * d);

    // random P in C^{t x s}<x>_d; Phi(P*P) computed two independent ways
    const std::vector<Word> words = enumerate_words(2, d);
    std::vector<Matrix> coeffs;
    for (std::size_t i = 0; i < words.size(); ++i) coeffs.push_back(rng.gauss_matrix(t, s));

    Matrix lhs = Matrix::Zero(s * n, s * n);
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j)
        lhs += kron(Matrix(coeffs[i].transpose() * coeffs[j]),
                    W.get(words[i].involution().concat(words[j])));

    Matrix H = build_hankel(W, d).flat();
    Matrix Pvec(static_cast<int>(words.size()) * t, s);
    for (std::size_t i = 0; i < words.size(); ++i)
      Pvec.middleRows(static_cast<int>(i) * t, t) = coeffs[i];
    // (P (x) I)^T (I_t (x) H) (P (x) I) after reordering: rows grouped per word
    Matrix PI = Matrix::Zero(static_cast<int>(words.size()) * n,  s * n);
    // build sum directly: rhs = sum_{i,j} (P_i^T P_j) (x) H_block(i,j)
    Matrix rhs = Matrix::Zero(s * n, s * n);
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j)
        rhs += kron(Matrix(coeffs[i].transpose() * coeffs[j]),
                    Matrix(H.block(static_cast<int>(i) * n, static_cast<int>(j) * n, n, n)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
    (void)PI;

    // positivity: H_d(W) >= 0 forces Phi(P*P) >= 0
    CHECK(min_eig(lhs) >= -1e-8);
  }
}

TEST_CASE("moment norms inherit the representation bound") {
  Rng rng(27);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 3 + trial;
    MatrixTuple Z({rng.sym(m), rng.sym(m)});
    double K = std::max(Z[0].operatorNorm(), Z[1].operatorNorm());
    MomentSequence Y = moments_from_representation(Z, Isometry(rng.isometry(m, 2)), 5);
    for (const Word& word : enumerate_words(2, 5))
      CHECK(Y.get(word).operatorNorm() <= std::pow(K, word.degree()) * (1 + 1e-12));
  }
}

TEST_CASE("growth bound check") {
  MomentSequence Y = scalar_point_moments(0.6, 0.5, 4);
  CHECK(growth_bound_check(Y, std::sqrt(1.25), 4).empty());
  CHECK(growth_bound_check(Y, 1e6, 4).empty());
  // C below the actual first moment forces a violation
  auto v = growth_bound_check(Y, 0.1, 4);
  CHECK(!v.empty());
  CHECK(v[0].norm > v[0].bound);
}

TEST_CASE("moment json round trip validates invariants") {
  Rng rng(28);
  MatrixTuple Z({rng.sym(4, 0.5), rng.sym(4, 0.5)});
  MomentSequence Y = moments_from_representation(Z, Isometry(rng.isometry(4, 2)), 4);
  Json j = moments_to_json(Y);
  MomentSequence back = moments_from_json(j);
  for (const Word& word : Y.class_reps())
    CHECK((back.get(word) - Y.get(word)).cwiseAbs().maxCoeff() == 0.0);

  Json bad = j;
  bad["values"].erase("11");
  CHECK_THROWS(moments_from_json(bad));
}
