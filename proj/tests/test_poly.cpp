#include "freehull/poly.hpp"

#include "freehull/random.hpp"

#include <doctest.h>

using namespace freehull;

namespace {
Word w(const char* s) { return Word::parse(s, 9); }
}  // namespace

TEST_CASE("parser accepts the worked polynomials") {
  MatrixPoly tv = parse_poly("1 - x1^2 - x2^4", 2);
  CHECK(tv.degree() == 4);
  CHECK(tv.coefficient(Word::empty())(0, 0) == 1.0);
  CHECK(tv.coefficient(w("11"))(0, 0) == -1.0);
  CHECK(tv.coefficient(w("2222"))(0, 0) == -1.0);
  CHECK(tv.is_symmetric());

  MatrixPoly cross = parse_poly("1 - x1*x2^2*x1", 2);
  CHECK(cross.coefficient(w("1221"))(0, 0) == -1.0);
  CHECK(cross.degree() == 4);

  MatrixPoly box = parse_poly("diag(1 - 2*x2^2 + x1^2 ; 1 - 2*x1^2 + x2^2)", 2);
  CHECK(box.block_dim() == 2);
  CHECK(box.coefficient(w("22"))(0, 0) == -2.0);
  CHECK(box.coefficient(w("22"))(1, 1) == 1.0);
  CHECK(box.coefficient(w("11"))(0, 0) == 1.0);
  CHECK(box.is_symmetric());
}

TEST_CASE("parser round-trips its own canonical print") {
  for (const char* text : {"1 - x1^2 - x2^4", "1 - x1*x2^2*x1", "0.5*x1*x2 - x2*x1 + 2",
                           "diag(1 - 2*x2^2 + x1^2 ; 1 - 2*x1^2 + x2^2)"}) {
    MatrixPoly p = parse_poly(text, 2);
    MatrixPoly q = parse_poly(p.str(), 2);
    CHECK((p - q).is_zero());
    CHECK(p.str() == q.str());
  }
}

TEST_CASE("parser reports positions on bad input") {
  CHECK_THROWS_AS(parse_poly("1 +* x1", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1 + ", 2), ParseError);
  try {
    parse_poly("1 + x9", 2);
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
}

TEST_CASE("eval_word") {
  MatrixTuple X({Matrix::Identity(3, 3), Matrix::Identity(3, 3)});
  CHECK((eval_word(Word::empty(), X) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1, 2;
  MatrixTuple Y({d, (Matrix(2, 2) << 0, 1, 1, 0).finished()});
  Matrix v = eval_word(w("121"), Y);
  CHECK(v(0, 0) == 0.0);
  CHECK(v(0, 1) == 2.0);
  CHECK(v(1, 0) == 2.0);
  CHECK(v(1, 1) == 0.0);

  Rng rng(2);
  MatrixTuple Z({rng.sym(3), rng.sym(3)});
  for (const Word& word : enumerate_words(2, 4)) {
    Matrix lhs = eval_word(word.involution(), Z);
    Matrix rhs = eval_word(word, Z).transpose();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("eval_poly on the frozen examples") {
  MatrixPoly tv = parse_poly("1 - x1^2 - x2^4", 2);
  Matrix v = tv.eval(MatrixTuple::scalars({0.6, 0.5}));
  CHECK(v(0, 0) == doctest::Approx(0.5775).epsilon(1e-14));

  // q = x2 x1^2 x2 + x3 x1^2 x3 - 1 at the explicit projection witness
  MatrixPoly q = parse_poly("x2*x1^2*x2 + x3*x1^2*x3 - 1", 3);
  const Matrix I3 = Matrix::Identity(3, 3), Z3 = Matrix::Zero(3, 3);
  Matrix X(6, 6), Y(6, 6), Z(6, 6);
  X << I3, Z3, Z3, Z3;
  Y << Z3, std::sqrt(2.0) * I3, std::sqrt(2.0) * I3, Z3;
  Z << std::sqrt(2.0) * I3, Z3, Z3, Z3;
  Matrix qv = q.eval(MatrixTuple({X, Y, Z}));
  CHECK((qv - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("noncommutative product expansion") {
  const int g = 2;
  MatrixPoly x1 = MatrixPoly::variable(g, 1), x2 = MatrixPoly::variable(g, 2);
  MatrixPoly prod = (x1 + x2) * (x1 - x2);
  // x1^2 - x1 x2 + x2 x1 - x2^2, the cross terms do not cancel
  CHECK(prod.coefficient(w("11"))(0, 0) == 1.0);
  CHECK(prod.coefficient(w("12"))(0, 0) == -1.0);
  CHECK(prod.coefficient(w("21"))(0, 0) == 1.0);
  CHECK(prod.coefficient(w("22"))(0, 0) == -1.0);

  MatrixPoly m = (x1 * x2).involution() * (x1 * x2);
  CHECK(m.coefficient(w("2112"))(0, 0) == 1.0);
  CHECK(m.terms().size() == 1);
}

TEST_CASE("archimedean certificate polynomial identity expands to zero") {
  // (x2^2 - 1/2)^2 + (1 - x1^2 - x2^4) + (x1^2 + x2^2) - 5/4 == 0
  const int g = 2;
  MatrixPoly s = parse_poly("x2^2 - 0.5", 2);
  MatrixPoly sum = s * s + parse_poly("1 - x1^2 - x2^4", g) + parse_poly("x1^2 + x2^2", g) -
                   MatrixPoly::constant(g, 1.25);
  CHECK(sum.is_zero());
}

TEST_CASE("product evaluation is multiplicative") {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const int g = 2, n = 2 + (k % 2);
    MatrixPoly p(g), q(g);
    auto words = enumerate_words(g, 2);
    for (const Word& word : words) {
      p.add_term(word, Matrix::Constant(1, 1, rng.gauss()));
      q.add_term(word, Matrix::Constant(1, 1, rng.gauss()));
    }
    MatrixTuple X({rng.sym(n, 0.7), rng.sym(n, 0.7)});
    Matrix lhs = (p * q).eval(X);
    Matrix rhs = p.eval(X) * q.eval(X);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
    Matrix inv = p.involution().eval(X);
    CHECK((inv - p.eval(X).transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("direct sums evaluate blockwise up to the canonical shuffle") {
  Rng rng(13);
  MatrixPoly p = parse_poly("diag(1 - 2*x2^2 + x1^2 ; 1 - 2*x1^2 + x2^2)", 2);
  const int l = p.block_dim(), na = 2, nb = 3;
  MatrixTuple A({rng.sym(na), rng.sym(na)}), B({rng.sym(nb), rng.sym(nb)});
  MatrixTuple AB = MatrixTuple({(Matrix(na + nb, na + nb) << A[0], Matrix::Zero(na, nb),
                                 Matrix::Zero(nb, na), B[0])
                                    .finished(),
                                (Matrix(na + nb, na + nb) << A[1], Matrix::Zero(na, nb),
                                 Matrix::Zero(nb, na), B[1])
                                    .finished()});
  Matrix lhs = p.eval(AB);                      // l(na+nb) square
  Matrix pa = p.eval(A), pb = p.eval(B);        // l*na and l*nb
  // shuffle permutation: (i, k) -> block position of k inside A or B
  const int n = na + nb;
  Matrix P = Matrix::Zero(l * n, l * n);
  for (int i = 0; i < l; ++i)
    for (int k = 0; k < n; ++k) {
      const int src = i * n + k;
      const int dst = (k < na) ? i * na + k : l * na + i * nb + (k - na);
      P(dst, src) = 1.0;
    }
  Matrix rhs = Matrix::Zero(l * n, l * n);
  rhs.topLeftCorner(l * na, l * na) = pa;
  rhs.bottomRightCorner(l * nb, l * nb) = pb;
  CHECK((P * lhs * P.transpose() - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}
