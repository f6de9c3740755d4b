#pragma once

#include "freehull/matops.hpp"
#include "freehull/words.hpp"

#include <map>
#include <string>
#include <vector>

namespace freehull {

/// g-tuple of symmetric n x n matrices, an evaluation point.
class MatrixTuple {
 public:
  MatrixTuple(int g, int n) : g_(g), n_(n), entries_(g, Matrix::Zero(n, n)) {
    if (g < 1 || n < 1) throw DimensionError("MatrixTuple: need g >= 1, n >= 1");
  }
  MatrixTuple(std::vector<Matrix> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw DimensionError("MatrixTuple: empty tuple");
    g_ = static_cast<int>(entries_.size());
    n_ = static_cast<int>(entries_[0].rows());
    for (const Matrix& m : entries_) {
      if (m.rows() != n_ || m.cols() != n_)
        throw DimensionError("MatrixTuple: entries must share one square size");
      if (!is_symmetric(m)) throw DimensionError("MatrixTuple: entries must be symmetric");
    }
  }

  static MatrixTuple scalars(const std::vector<double>& x) {
    std::vector<Matrix> e;
    for (double v : x) e.push_back(Matrix::Constant(1, 1, v));
    return MatrixTuple(std::move(e));
  }

  int g() const { return g_; }
  int n() const { return n_; }
  const Matrix& operator[](int j) const { return entries_.at(j); }
  Matrix& operator[](int j) { return entries_.at(j); }
  const std::vector<Matrix>& entries() const { return entries_; }

 private:
  int g_ = 0, n_ = 0;
  std::vector<Matrix> entries_;
};

/// Ordered product X_{i1} ... X_{ik}; the empty word maps to the identity.
Matrix eval_word(const Word& w, const MatrixTuple& X);

/// Free matrix polynomial: finitely supported map word -> l x l real block.
class MatrixPoly {
 public:
  MatrixPoly(int g, int block_dim = 1) : g_(g), block_dim_(block_dim) {
    if (g < 1 || block_dim < 1) throw DimensionError("MatrixPoly: need g >= 1, block >= 1");
  }

  static MatrixPoly constant(int g, double c, int block_dim = 1) {
    MatrixPoly p(g, block_dim);
    p.add_term(Word::empty(), Matrix::Identity(block_dim, block_dim) * c);
    return p;
  }
  static MatrixPoly variable(int g, int j) {
    MatrixPoly p(g, 1);
    p.add_term(Word::letter(j), Matrix::Identity(1, 1));
    return p;
  }

  int g() const { return g_; }
  int block_dim() const { return block_dim_; }
  const std::map<Word, Matrix>& terms() const { return terms_; }

  int degree() const {
    int d = 0;
    for (const auto& [w, b] : terms_) d = std::max(d, w.degree());
    return d;
  }

  Matrix coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Matrix::Zero(block_dim_, block_dim_) : it->second;
  }

  /// Adds c into the coefficient of w; drops the block if it becomes exactly zero.
  void add_term(const Word& w, const Matrix& c) {
    if (c.rows() != block_dim_ || c.cols() != block_dim_)
      throw DimensionError("MatrixPoly: coefficient block has wrong size");
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      if (!c.isZero(0.0)) terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.isZero(0.0)) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_symmetric(double tol = 0.0) const {
    for (const auto& [w, b] : terms_) {
      Matrix d = b - coefficient(w.involution()).transpose();
      if (d.cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
  }

  MatrixPoly involution() const;
  MatrixPoly operator+(const MatrixPoly& rhs) const;
  MatrixPoly operator-(const MatrixPoly& rhs) const;
  MatrixPoly operator*(const MatrixPoly& rhs) const;
  MatrixPoly scaled(double c) const;
  MatrixPoly operator-() const { return scaled(-1.0); }

  /// P(X) = sum_w B_w (x) w(X), a symmetric (block_dim * n) matrix for symmetric P.
  Matrix eval(const MatrixTuple& X) const;

  /// Canonical text form; parse(print(p)) round-trips.
  std::string str() const;

 private:
  int g_, block_dim_;
  std::map<Word, Matrix> terms_;
};

MatrixPoly direct_sum(const std::vector<MatrixPoly>& blocks);

/// Parses the polynomial grammar:
///   expr := term (('+'|'-') term)*
///   term := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base := number | 'x' uint | '(' expr ')' | 'diag(' expr (';' expr)* ')'
/// Multiplication is noncommutative, '^' binds tighter than '*',
/// unary minus is allowed at the start of a term. Variables are x1..xg.
MatrixPoly parse_poly(const std::string& text, int g);

}  // namespace freehull
