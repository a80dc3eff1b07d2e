#include "pwsnf/parser.hpp"

#include <cctype>
#include <vector>

#include "pwsnf/errors.hpp"

namespace pwsnf {

namespace {

enum class Tok { Int, Rat, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_digit = [&](std::size_t k) { return k < s.size() && std::isdigit(static_cast<unsigned char>(s[k])); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (is_digit(i)) {
      std::size_t j = i;
      while (is_digit(j)) ++j;
      if (j < s.size() && s[j] == '/' && is_digit(j + 1)) {
        std::size_t k = j + 1;
        while (is_digit(k)) ++k;
        out.push_back({Tok::Rat, std::string(s.substr(i, k - i)), col});
        i = k;
      } else {
        out.push_back({Tok::Int, std::string(s.substr(i, j - i)), col});
        i = j;
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at column " + std::to_string(col),
                         out.size() + 1, col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring, const std::map<std::string, Poly>& bound)
      : toks_(lex(text)), ring_(ring), bound_(bound) {}

  Poly run() {
    Poly p = expr();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + " at token " + std::to_string(pos_ + 1) + " (column " + std::to_string(t.column) + ")",
                     pos_ + 1, t.column);
  }

  Poly expr() {
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      take();
      neg = true;
    }
    Poly acc = term();
    if (neg) acc = -acc;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = take().kind == Tok::Minus;
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek().kind == Tok::Star) {
      take();
      acc = acc * factor();
    }
    return acc;
  }

  Poly factor() {
    if (peek().kind == Tok::Minus) {
      take();
      return -factor();
    }
    Poly base = primary();
    if (peek().kind != Tok::Caret) return base;
    take();
    long e;
    if (peek().kind == Tok::Int) {
      e = Rational::parse(take().text).to_long();
    } else if (peek().kind == Tok::LParen) {
      take();
      Poly ev = expr();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      take();
      if (!ev.is_constant() || !ev.constant_value().is_integer() || ev.constant_value().sign() < 0)
        fail("exponent must be a non-negative integer constant, got '" + ev.str() + "'");
      e = ev.constant_value().to_long();
    } else {
      fail("expected exponent, got " + describe(peek()));
    }
    if (e > 4096) fail("exponent too large");
    return base.pow(static_cast<unsigned>(e));
  }

  Poly primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int:
      case Tok::Rat:
        return Poly(ring_, Rational::parse(take().text));
      case Tok::Ident: {
        auto it = bound_.find(t.text);
        if (it != bound_.end()) {
          take();
          return it->second.with_ring(ring_);
        }
        if (!ring_->find(t.text)) fail("undeclared symbol '" + t.text + "'");
        return Poly::var(ring_, take().text);
      }
      case Tok::LParen: {
        take();
        Poly p = expr();
        if (peek().kind != Tok::RParen) fail("expected ')', got " + describe(peek()));
        take();
        return p;
      }
      default:
        fail("unexpected " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Ring& ring_;
  const std::map<std::string, Poly>& bound_;
};

}  // namespace

Poly parse_poly(std::string_view text, const Ring& ring, const std::map<std::string, Poly>& bound) {
  return Parser(text, ring, bound).run();
}

}  // namespace pwsnf
