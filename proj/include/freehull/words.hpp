#pragma once

#include "freehull/common.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace freehull {

/// A word in g noncommuting letters, letters numbered 1..g.
/// The empty word is the monoid identity; the involution reverses letter order.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  static Word empty() { return Word{}; }
  static Word letter(int j) { return Word{{j}}; }

  int degree() const { return static_cast<int>(letters_.size()); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }

  Word involution() const {
    return Word{std::vector<int>(letters_.rbegin(), letters_.rend())};
  }

  bool is_palindrome() const {
    const int k = degree();
    for (int i = 0; i < k / 2; ++i)
      if (letters_[i] != letters_[k - 1 - i]) return false;
    return true;
  }

  Word concat(const Word& rhs) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word{std::move(out)};
  }

  Word append(int j) const {
    std::vector<int> out = letters_;
    out.push_back(j);
    return Word{std::move(out)};
  }

  /// Graded order: shorter words first, lexicographic within a degree.
  std::strong_ordering operator<=>(const Word& rhs) const {
    if (auto c = degree() <=> rhs.degree(); c != 0) return c;
    return letters_ <=> rhs.letters_;
  }
  bool operator==(const Word&) const = default;

  /// Canonical representative of the class {w, w*}.
  Word class_rep() const {
    Word rev = involution();
    return (rev < *this) ? rev : *this;
  }

  /// Digit string, empty string for the empty word.
  std::string str() const {
    std::string s;
    for (int j : letters_) s += std::to_string(j);
    return s;
  }

  static Word parse(const std::string& digits, int g) {
    std::vector<int> out;
    out.reserve(digits.size());
    for (char c : digits) {
      if (c < '1' || c > '9') throw Error("word must be a digit string, got '" + digits + "'");
      int j = c - '0';
      if (j > g) throw Error("letter " + std::to_string(j) + " exceeds variable count g=" + std::to_string(g));
      out.push_back(j);
    }
    return Word{std::move(out)};
  }

 private:
  std::vector<int> letters_;
};

/// All words of degree <= max_deg in graded-lex order (letter 1 < 2 < ... < g).
std::vector<Word> enumerate_words(int g, int max_deg);

/// Number of words of degree <= max_deg: sum_{k=0}^{max_deg} g^k.
std::int64_t count_words(int g, int max_deg);

inline Word involution(const Word& w) { return w.involution(); }

}  // namespace freehull
