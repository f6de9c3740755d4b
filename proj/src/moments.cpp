#include "freehull/moments.hpp"

namespace freehull {

MomentSequence::MomentSequence(int g, int n, int max_deg) : g_(g), n_(n), max_deg_(max_deg) {
  if (g < 1 || n < 1 || max_deg < 0) throw DimensionError("MomentSequence: bad dimensions");
  for (const Word& w : enumerate_words(g, max_deg))
    if (w == w.class_rep()) reps_.push_back(w);
  for (const Word& w : reps_) values_[w] = Matrix::Zero(n, n);
  values_[Word::empty()] = Matrix::Identity(n, n);
}

Matrix MomentSequence::get(const Word& w) const {
  if (w.degree() > max_deg_)
    throw DimensionError("MomentSequence::get: degree " + std::to_string(w.degree()) +
                         " exceeds stored cap " + std::to_string(max_deg_));
  const Word rep = w.class_rep();
  const Matrix& stored = values_.at(rep);
  return (w == rep) ? stored : stored.transpose();
}

void MomentSequence::set(const Word& w, const Matrix& value) {
  if (w.degree() > max_deg_) throw DimensionError("MomentSequence::set: degree exceeds cap");
  if (value.rows() != n_ || value.cols() != n_)
    throw DimensionError("MomentSequence::set: value has wrong size");
  const Word rep = w.class_rep();
  Matrix v = (w == rep) ? value : Matrix(value.transpose());
  if (rep.is_palindrome()) v = symmetrize(v);
  values_.at(rep) = v;
}

void MomentSequence::validate(double tol) const {
  const Matrix& e = values_.at(Word::empty());
  if ((e - Matrix::Identity(n_, n_)).cwiseAbs().maxCoeff() > tol)
    throw NumericalError("MomentSequence: Y_empty != I");
  for (const Word& w : reps_)
    if (w.is_palindrome() && !is_symmetric(values_.at(w), tol))
      throw NumericalError("MomentSequence: palindromic value Y_" + w.str() +
                           " is not symmetric");
}

MomentSequence MomentSequence::truncated(int new_max_deg) const {
  if (new_max_deg > max_deg_) throw DimensionError("truncated: can only lower the cap");
  MomentSequence out(g_, n_, new_max_deg);
  for (const Word& w : out.class_reps()) out.set(w, get(w));
  return out;
}

MomentSequence moments_from_representation(const MatrixTuple& Z, const Isometry& V,
                                           int max_deg) {
  if (V.rows() != Z.n()) throw DimensionError("moments_from_representation: V rows != Z size");
  const int g = Z.g();
  MomentSequence out(g, V.cols(), max_deg);
  // Z^w V by extending products one letter at a time over the word tree.
  std::vector<Word> words = enumerate_words(g, max_deg);
  std::map<Word, Matrix> prod;
  prod[Word::empty()] = V.matrix();
  for (const Word& w : words) {
    if (w.is_empty()) continue;
    Word tail(std::vector<int>(w.letters().begin() + 1, w.letters().end()));
    prod[w] = Z[w.letters()[0] - 1] * prod.at(tail);
  }
  for (const Word& w : words) {
    if (w.is_empty()) continue;  // the empty word stays the exact identity
    if (w == w.class_rep()) out.set(w, V.matrix().transpose() * prod.at(w));
  }
  return out;
}

void for_each_hankel_block(int g, int d,
                           const std::function<void(int, int, const Word&)>& fn) {
  const std::vector<Word> words = enumerate_words(g, d);
  const int N = static_cast<int>(words.size());
  for (int i = 0; i < N; ++i) {
    const Word wi = words[i].involution();
    for (int j = 0; j < N; ++j) fn(i, j, wi.concat(words[j]));
  }
}

void for_each_localizing_block(
    const MatrixPoly& p, int d,
    const std::function<void(int, int, const Matrix&, const Word&)>& fn) {
  const std::vector<Word> words = enumerate_words(p.g(), d);
  const int N = static_cast<int>(words.size());
  for (int i = 0; i < N; ++i) {
    const Word wi = words[i].involution();
    for (int j = 0; j < N; ++j)
      for (const auto& [gamma, pg] : p.terms())
        fn(i, j, pg, wi.concat(gamma).concat(words[j]));
  }
}

BlockMatrix build_hankel(const MomentSequence& W, int d) {
  if (2 * d > W.max_deg())
    throw DimensionError("build_hankel: need moments to degree 2d");
  std::vector<Word> words = enumerate_words(W.g(), d);
  BlockMatrix H(words, words, W.n(), W.n());
  for_each_hankel_block(W.g(), d,
                        [&](int i, int j, const Word& w) { H.block(i, j) = W.get(w); });
  return H;
}

BlockMatrix build_localizing(const MatrixPoly& p, const MomentSequence& W, int d) {
  if (p.g() != W.g()) throw DimensionError("build_localizing: variable count mismatch");
  if (2 * d + p.degree() > W.max_deg())
    throw DimensionError("build_localizing: need moments to degree 2d + deg(p)");
  std::vector<Word> words = enumerate_words(W.g(), d);
  const int bd = p.block_dim() * W.n();
  BlockMatrix H(words, words, bd, bd);
  for_each_localizing_block(p, d, [&](int i, int j, const Matrix& pg, const Word& w) {
    H.block(i, j) += kron(pg, W.get(w));
  });
  return H;
}

Matrix riesz_apply(const MomentSequence& W, const MatrixPoly& P) {
  if (P.g() != W.g()) throw DimensionError("riesz_apply: variable count mismatch");
  if (P.degree() > W.max_deg())
    throw DimensionError("riesz_apply: polynomial degree exceeds stored moments");
  const int s = P.block_dim(), n = W.n();
  Matrix out = Matrix::Zero(s * n, s * n);
  for (const auto& [w, b] : P.terms()) out += kron(b, W.get(w));
  return out;
}

std::vector<GrowthViolation> growth_bound_check(const MomentSequence& W, double C,
                                                int max_len) {
  std::vector<GrowthViolation> out;
  const int cap = std::min(max_len, W.max_deg());
  for (const Word& w : enumerate_words(W.g(), cap)) {
    if (w != w.class_rep()) continue;  // the class partner has the same norm
    const double norm = W.get(w).operatorNorm();
    const double bound = std::pow(C, w.degree());
    if (norm > bound * (1.0 + 1e-6)) out.push_back(GrowthViolation{w, norm, bound});
  }
  return out;
}

}  // namespace freehull
