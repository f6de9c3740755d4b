#pragma once

#include "freehull/moments.hpp"
#include "freehull/poly.hpp"

#include <cstdint>
#include <random>

namespace freehull {

/// Deterministic sampling helpers; mt19937_64 keeps streams reproducible for a
/// given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(eng_);
  }

  double gauss() {
    // Box-Muller on explicit uniforms
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = std::max(uniform(), 1e-300), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  Matrix gauss_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = gauss();
    return m;
  }

  Matrix sym(int n, double scale = 1.0) {
    return scale * symmetrize(gauss_matrix(n, n));
  }

  Matrix skew(int n, double scale = 1.0) {
    Matrix a = gauss_matrix(n, n);
    return scale * 0.5 * (a - a.transpose());
  }

  /// Random isometry rows x cols via QR.
  Matrix isometry(int rows, int cols) {
    Matrix a = gauss_matrix(rows, cols);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    return q;
  }

  /// Random tuple in D_p with p(X) >= floor, found by shrinking a random
  /// symmetric tuple toward zero (p(0) must be PD).
  MatrixTuple in_dp(const MatrixPoly& p, int n, double floor = 1e-3) {
    std::vector<Matrix> e;
    for (int j = 0; j < p.g(); ++j) e.push_back(sym(n));
    MatrixTuple X(std::move(e));
    for (int tries = 0; tries < 200; ++tries) {
      if (min_eig(p.eval(X)) >= floor) return X;
      for (int j = 0; j < p.g(); ++j) X[j] *= 0.8;
    }
    throw NumericalError("Rng::in_dp: failed to find a point (is p(0) > 0?)");
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace freehull
