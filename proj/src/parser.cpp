#include "freehull/poly.hpp"

#include <cctype>
#include <cstdlib>

namespace freehull {

namespace {

class Parser {
 public:
  Parser(const std::string& text, int g) : text_(text), g_(g) {}

  MatrixPoly run() {
    MatrixPoly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool match_keyword(const std::string& kw) {
    skip_ws();
    if (text_.compare(pos_, kw.size(), kw) == 0) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  unsigned parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected integer", pos_);
    unsigned v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      v = v * 10 + static_cast<unsigned>(text_[pos_++] - '0');
    return v;
  }

  double parse_number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("expected number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  MatrixPoly parse_expr() {
    bool neg = false;
    skip_ws();
    if (eat('-'))
      neg = true;
    else
      eat('+');
    MatrixPoly acc = parse_term();
    if (neg) acc = acc.scaled(-1.0);
    while (true) {
      skip_ws();
      if (eat('+'))
        acc = acc + parse_term();
      else if (eat('-'))
        acc = acc - parse_term();
      else
        break;
    }
    return acc;
  }

  MatrixPoly parse_term() {
    MatrixPoly acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  MatrixPoly parse_factor() {
    MatrixPoly base = parse_base();
    if (eat('^')) {
      unsigned e = parse_uint();
      MatrixPoly out = MatrixPoly::constant(g_, 1.0, base.block_dim());
      for (unsigned i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  MatrixPoly parse_base() {
    skip_ws();
    std::size_t here = pos_;
    char c = peek();
    if (c == '(') {
      eat('(');
      MatrixPoly p = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (c == 'd') {
      if (!match_keyword("diag(")) throw ParseError("expected 'diag('", here);
      std::vector<MatrixPoly> blocks;
      blocks.push_back(parse_expr());
      while (eat(';')) blocks.push_back(parse_expr());
      if (!eat(')')) throw ParseError("expected ')' closing diag", pos_);
      return direct_sum(blocks);
    }
    if (c == 'x') {
      ++pos_;
      std::size_t at = pos_;
      unsigned j = parse_uint();
      if (j < 1 || static_cast<int>(j) > g_)
        throw ParseError("unknown variable x" + std::to_string(j) + " with g=" + std::to_string(g_),
                         at);
      return MatrixPoly::variable(g_, static_cast<int>(j));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return MatrixPoly::constant(g_, parse_number());
    }
    throw ParseError("unexpected input", here);
  }

  const std::string& text_;
  int g_;
  std::size_t pos_ = 0;
};

}  // namespace

MatrixPoly parse_poly(const std::string& text, int g) { return Parser(text, g).run(); }

}  // namespace freehull
