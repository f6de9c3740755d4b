#include "freehull/words.hpp"

namespace freehull {

std::vector<Word> enumerate_words(int g, int max_deg) {
  if (g < 1) throw Error("enumerate_words: need g >= 1");
  if (max_deg < 0) throw Error("enumerate_words: need max_deg >= 0");
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(count_words(g, max_deg)));
  out.push_back(Word::empty());
  std::size_t level_begin = 0;
  for (int deg = 1; deg <= max_deg; ++deg) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (int j = 1; j <= g; ++j) out.push_back(out[i].append(j));
    level_begin = level_end;
  }
  return out;
}

std::int64_t count_words(int g, int max_deg) {
  std::int64_t total = 0, pw = 1;
  for (int k = 0; k <= max_deg; ++k) {
    total += pw;
    pw *= g;
  }
  return total;
}

}  // namespace freehull
