#include "freehull/sdp.hpp"

#include "freehull/random.hpp"

#include <doctest.h>

using namespace freehull;

namespace {

AffineMatrixProblem one_block(const Matrix& F0, const std::vector<Matrix>& Fs, double R) {
  AffineMatrixProblem P;
  P.num_params = static_cast<int>(Fs.size());
  P.box_radius = R;
  AffineBlock b;
  b.F0 = F0;
  for (const Matrix& Fi : Fs) {
    std::vector<SparseEntry> e;
    for (int r = 0; r < Fi.rows(); ++r)
      for (int c = 0; c < Fi.cols(); ++c)
        if (Fi(r, c) != 0.0) e.push_back({r, c, Fi(r, c)});
    b.coeff.push_back(std::move(e));
  }
  P.blocks.push_back(std::move(b));
  for (int i = 0; i < P.num_params; ++i) P.labels.push_back("u" + std::to_string(i));
  return P;
}

// brute-force oracle: two-stage grid search over the box
double grid_opt(const AffineMatrixProblem& P, int coarse = 60) {
  const int m = P.num_params;
  REQUIRE(m >= 1);
  REQUIRE(m <= 2);
  const double R = P.box_radius;
  auto margin = [&](double a, double b) {
    Vector u(m);
    u(0) = a;
    if (m > 1) u(1) = b;
    return P.margin(u);
  };
  double best = -1e300, ba = 0, bb = 0;
  for (int i = 0; i <= coarse; ++i)
    for (int j = 0; j <= (m > 1 ? coarse : 0); ++j) {
      const double a = -R + 2 * R * i / coarse;
      const double b = m > 1 ? -R + 2 * R * j / coarse : 0;
      const double t = margin(a, b);
      if (t > best) {
        best = t;
        ba = a;
        bb = b;
      }
    }
  // refine around the winner
  double h = 2 * R / coarse;
  for (int stage = 0; stage < 3; ++stage) {
    double nba = ba, nbb = bb;
    for (int i = -coarse / 2; i <= coarse / 2; ++i)
      for (int j = (m > 1 ? -coarse / 2 : 0); j <= (m > 1 ? coarse / 2 : 0); ++j) {
        const double a = std::clamp(ba + h * i / (coarse / 2), -R, R);
        const double b = m > 1 ? std::clamp(bb + h * j / (coarse / 2), -R, R) : 0;
        const double t = margin(a, b);
        if (t > best) {
          best = t;
          nba = a;
          nbb = b;
        }
      }
    ba = nba;
    bb = nbb;
    h /= coarse / 4.0;
  }
  return best;
}

}  // namespace

TEST_CASE("single parameter: F(u) = [[1,u],[u,1]] attains t* = 1 at u = 0") {
  Matrix F0 = Matrix::Identity(2, 2);
  Matrix F1 = (Matrix(2, 2) << 0, 1, 1, 0).finished();
  Verdict v = solve(one_block(F0, {F1}, 10.0));
  CHECK(v.status == FeasStatus::StrictlyFeasible);
  CHECK(v.margin == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(v.point(0)) <= 1e-5);
}

TEST_CASE("constant infeasible block is certified") {
  Matrix F0 = (Matrix(2, 2) << 4, 3, 3, 2).finished();
  AffineMatrixProblem P = one_block(F0, {}, 10.0);
  Verdict v = solve(P);
  CHECK(v.status == FeasStatus::Infeasible);
  CHECK(v.margin == doctest::Approx(3 - std::sqrt(10.0)).epsilon(1e-6));
  REQUIRE(v.certificate.has_value());
  CHECK(verify_certificate(*v.certificate, P, 1e-6));
  // with unit-trace normalization the gap is -lambda_min = sqrt(10) - 3
  CHECK(v.certificate->gap == doctest::Approx(std::sqrt(10.0) - 3).epsilon(1e-5));
}

TEST_CASE("diag(u, 1-u) attains 1/2 at u = 1/2") {
  Matrix F0 = Matrix::Zero(2, 2);
  F0(1, 1) = 1.0;
  Matrix F1 = Matrix::Zero(2, 2);
  F1(0, 0) = 1.0;
  F1(1, 1) = -1.0;
  Verdict v = solve(one_block(F0, {F1}, 10.0));
  CHECK(v.status == FeasStatus::StrictlyFeasible);
  CHECK(v.margin == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(v.point(0) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("multi-block problems and the grid-search oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 14; ++trial) {
    const int m = 1 + (trial % 2);
    const int dim = 2 + (trial % 2);
    AffineMatrixProblem P;
    P.num_params = m;
    P.box_radius = 2.0;
    for (int b = 0; b < 2; ++b) {
      Matrix F0 = rng.sym(dim);
      F0 += (0.5 + rng.uniform()) * Matrix::Identity(dim, dim) * (trial % 3 == 0 ? -1.0 : 1.0);
      AffineBlock blk;
      blk.F0 = F0;
      for (int i = 0; i < m; ++i) {
        Matrix Fi = rng.sym(dim, 0.7);
        std::vector<SparseEntry> e;
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c)
            if (Fi(r, c) != 0.0) e.push_back({r, c, Fi(r, c)});
        blk.coeff.push_back(std::move(e));
      }
      P.blocks.push_back(std::move(blk));
    }
    P.labels.assign(m, "u");
    Verdict v = solve(P);
    const double oracle = grid_opt(P);
    CHECK(v.margin == doctest::Approx(oracle).epsilon(1e-3));
    CHECK(v.margin <= oracle + 5e-4);  // attained value, up to grid resolution
    if (v.status == FeasStatus::Infeasible) {
      REQUIRE(v.certificate.has_value());
      CHECK(verify_certificate(*v.certificate, P, 1e-6));
    }
  }
}

TEST_CASE("concavity of the margin along segments") {
  Rng rng(32);
  AffineMatrixProblem P;
  P.num_params = 3;
  P.box_radius = 5.0;
  AffineBlock blk;
  blk.F0 = Matrix::Identity(4, 4);
  for (int i = 0; i < 3; ++i) {
    Matrix Fi = rng.sym(4, 0.5);
    std::vector<SparseEntry> e;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (Fi(r, c) != 0.0) e.push_back({r, c, Fi(r, c)});
    blk.coeff.push_back(std::move(e));
  }
  P.blocks.push_back(std::move(blk));
  P.labels.assign(3, "u");
  for (int k = 0; k < 50; ++k) {
    Vector u1 = Vector::NullaryExpr(3, [&](Eigen::Index) { return rng.uniform(-1, 1); });
    Vector u2 = Vector::NullaryExpr(3, [&](Eigen::Index) { return rng.uniform(-1, 1); });
    const double mid = P.margin(0.5 * (u1 + u2));
    CHECK(mid >= std::min(P.margin(u1), P.margin(u2)) - 1e-10);
  }
}

TEST_CASE("scaling all data scales the optimum") {
  Matrix F0 = (Matrix(2, 2) << 0.3, 0.1, 0.1, -0.2).finished();
  Matrix F1 = (Matrix(2, 2) << 1, 0.5, 0.5, -1).finished();
  for (double c : {1.0, 7.5, 0.03}) {
    Verdict v1 = solve(one_block(F0, {F1}, 3.0));
    Verdict vc = solve(one_block(Matrix(c * F0), {Matrix(c * F1)}, 3.0));
    CHECK(vc.margin == doctest::Approx(c * v1.margin).epsilon(1e-5));
    CHECK(to_string(vc.status) == to_string(v1.status));
  }
}

TEST_CASE("certificates: tampering breaks verification") {
  Matrix F0 = (Matrix(2, 2) << 4, 3, 3, 2).finished();
  AffineMatrixProblem P = one_block(F0, {}, 10.0);
  Verdict v = solve(P);
  REQUIRE(v.certificate.has_value());
  InfeasibilityCertificate bad = *v.certificate;
  bad.multipliers[0] = -bad.multipliers[0];
  CHECK(!verify_certificate(bad, P, 1e-6));
  bad = *v.certificate;
  bad.gap = -1.0;
  CHECK(!verify_certificate(bad, P, 1e-6));
  bad = *v.certificate;
  bad.gap = 0.0;
  CHECK(!verify_certificate(bad, P, 1e-6));
}

TEST_CASE("infeasible affine family with box-certified dual") {
  // F(u) = diag(u - 1, -u - 1): infeasible for every u
  Matrix F0 = -Matrix::Identity(2, 2);
  Matrix F1 = Matrix::Zero(2, 2);
  F1(0, 0) = 1.0;
  F1(1, 1) = -1.0;
  AffineMatrixProblem P = one_block(F0, {F1}, 10.0);
  Verdict v = solve(P);
  CHECK(v.status == FeasStatus::Infeasible);
  CHECK(v.margin == doctest::Approx(-1.0).epsilon(1e-6));
  REQUIRE(v.certificate.has_value());
  CHECK(verify_certificate(*v.certificate, P, 1e-6));
}

TEST_CASE("dimension cap and box validation") {
  AffineMatrixProblem P = one_block(Matrix::Identity(2, 2), {}, 10.0);
  SdpConfig cfg;
  cfg.dim_cap = 1;
  CHECK_THROWS_AS(solve(P, cfg), DimensionError);
  P.box_radius = -1;
  CHECK_THROWS_AS(solve(P), DimensionError);
}

TEST_CASE("problem dump is valid-looking JSON") {
  AffineMatrixProblem P =
      one_block(Matrix::Identity(2, 2), {(Matrix(2, 2) << 0, 1, 1, 0).finished()}, 2.0);
  std::string s = dump_problem(P);
  CHECK(s.find("\"box_radius\":2") != std::string::npos);
  CHECK(s.find("\"blocks\"") != std::string::npos);
}
