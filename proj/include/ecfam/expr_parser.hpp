#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ecfam/arith.hpp"

namespace ecfam {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Recursive-descent parser for + - * / ^ and parentheses over a ring R.
// Leaf maps an identifier to an element of R.  Juxtaposition such as
// "2u" or ")(" is read as multiplication.
template <class R, class Leaf>
class ExprParser {
 public:
  ExprParser(std::string_view text, Leaf leaf) : s_(text), leaf_(leaf) {}

  R parse() {
    R r = expr();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return r;
  }

 private:
  std::string_view s_;
  Leaf leaf_;
  std::size_t i_ = 0;

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++i_;
      return true;
    }
    return false;
  }
  bool at_power() {
    skip();
    if (i_ < s_.size() && s_[i_] == '^') return true;
    return i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*';
  }
  bool starts_primary() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  R expr() {
    R acc = term();
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  R term() {
    R acc = unary();
    while (true) {
      skip();
      if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == '*') return acc;
      if (eat('*')) acc = acc * unary();
      else if (eat('/')) acc = acc / unary();
      else if (starts_primary()) acc = acc * power();
      else return acc;
    }
  }

  R unary() {
    if (eat('-')) return R(Rational(0)) - unary();
    if (eat('+')) return unary();
    return power();
  }

  R power() {
    R base = primary();
    if (at_power()) {
      if (s_[i_] == '^') ++i_;
      else i_ += 2;
      skip();
      std::size_t start = i_;
      bool paren = eat('(');
      skip();
      std::size_t d0 = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (d0 == i_) throw ParseError("expected non-negative integer exponent", start);
      unsigned long e = std::stoul(std::string(s_.substr(d0, i_ - d0)));
      if (paren && !eat(')')) throw ParseError("expected ')'", i_);
      R r(Rational(1));
      for (unsigned long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  R primary() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      R r = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      Integer n(std::string(s_.substr(start, i_ - start)));
      return R(Rational(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      return leaf_(std::string(s_.substr(start, i_ - start)), start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }
};

}  // namespace ecfam
