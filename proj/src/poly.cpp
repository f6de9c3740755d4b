#include "freehull/poly.hpp"

#include <sstream>

namespace freehull {

Matrix eval_word(const Word& w, const MatrixTuple& X) {
  Matrix out = Matrix::Identity(X.n(), X.n());
  for (int j : w.letters()) {
    if (j < 1 || j > X.g()) throw DimensionError("eval_word: letter out of range");
    out = out * X[j - 1];
  }
  return out;
}

MatrixPoly MatrixPoly::involution() const {
  MatrixPoly out(g_, block_dim_);
  for (const auto& [w, b] : terms_) out.add_term(w.involution(), b.transpose());
  return out;
}

MatrixPoly MatrixPoly::operator+(const MatrixPoly& rhs) const {
  if (g_ != rhs.g_ || block_dim_ != rhs.block_dim_)
    throw DimensionError("MatrixPoly +: mismatched g or block dimension");
  MatrixPoly out = *this;
  for (const auto& [w, b] : rhs.terms_) out.add_term(w, b);
  return out;
}

MatrixPoly MatrixPoly::operator-(const MatrixPoly& rhs) const {
  return *this + rhs.scaled(-1.0);
}

MatrixPoly MatrixPoly::operator*(const MatrixPoly& rhs) const {
  if (g_ != rhs.g_) throw DimensionError("MatrixPoly *: mismatched g");
  // 1x1 blocks broadcast against larger blocks, anything else must match.
  int lb = block_dim_, rb = rhs.block_dim_;
  if (lb != rb && lb != 1 && rb != 1)
    throw DimensionError("MatrixPoly *: incompatible block dimensions");
  int ob = std::max(lb, rb);
  MatrixPoly out(g_, ob);
  for (const auto& [v, a] : terms_)
    for (const auto& [w, b] : rhs.terms_) {
      Matrix c;
      if (lb == rb)
        c = a * b;
      else if (lb == 1)
        c = a(0, 0) * b;
      else
        c = a * b(0, 0);
      out.add_term(v.concat(w), c);
    }
  return out;
}

MatrixPoly MatrixPoly::scaled(double c) const {
  MatrixPoly out(g_, block_dim_);
  for (const auto& [w, b] : terms_) out.add_term(w, c * b);
  return out;
}

Matrix MatrixPoly::eval(const MatrixTuple& X) const {
  if (X.g() != g_) throw DimensionError("MatrixPoly::eval: variable count mismatch");
  const int n = X.n();
  Matrix out = Matrix::Zero(block_dim_ * n, block_dim_ * n);
  for (const auto& [w, b] : terms_) out += kron(b, eval_word(w, X));
  return out;
}

MatrixPoly direct_sum(const std::vector<MatrixPoly>& blocks) {
  if (blocks.empty()) throw DimensionError("direct_sum: empty list");
  int g = blocks[0].g();
  int total = 0;
  for (const MatrixPoly& p : blocks) {
    if (p.g() != g) throw DimensionError("direct_sum: mismatched g");
    total += p.block_dim();
  }
  MatrixPoly out(g, total);
  int off = 0;
  for (const MatrixPoly& p : blocks) {
    const int d = p.block_dim();
    for (const auto& [w, b] : p.terms()) {
      Matrix c = Matrix::Zero(total, total);
      c.block(off, off, d, d) = b;
      out.add_term(w, c);
    }
    off += d;
  }
  return out;
}

namespace {

void print_scalar_term(std::ostringstream& os, bool& first, double c, const Word& w) {
  if (c == 0.0) return;
  double a = std::abs(c);
  if (first) {
    if (c < 0) os << "-";
    first = false;
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  bool need_coeff = (a != 1.0) || w.is_empty();
  if (need_coeff) {
    std::ostringstream num;
    num << a;
    os << num.str();
  }
  bool need_star = need_coeff;
  int i = 0;
  const auto& L = w.letters();
  while (i < static_cast<int>(L.size())) {
    int j = i;
    while (j < static_cast<int>(L.size()) && L[j] == L[i]) ++j;
    if (need_star) os << "*";
    os << "x" << L[i];
    if (j - i > 1) os << "^" << (j - i);
    need_star = true;
    i = j;
  }
}

}  // namespace

std::string MatrixPoly::str() const {
  if (block_dim_ == 1) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, b] : terms_) print_scalar_term(os, first, b(0, 0), w);
    if (first) os << "0";
    return os.str();
  }
  // Block-diagonal polynomials print as diag(...) of the scalar diagonals.
  std::ostringstream os;
  os << "diag(";
  for (int k = 0; k < block_dim_; ++k) {
    if (k) os << " ; ";
    bool first = true;
    for (const auto& [w, b] : terms_) print_scalar_term(os, first, b(k, k), w);
    if (first) os << "0";
  }
  os << ")";
  return os.str();
}

}  // namespace freehull
