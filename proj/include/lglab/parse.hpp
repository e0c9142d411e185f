#pragma once

// Polynomial text grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | name | '(' expr ')'
//   name    := [a-zA-Z][a-zA-Z0-9_]*
// Whitespace is insignificant. Juxtaposition ("2x", "x y") is rejected.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lglab/errors.hpp"
#include "lglab/poly.hpp"

namespace lglab {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  ExactPoly parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty polynomial", pos_);
    ExactPoly p = expr();
    skip_ws();
    if (pos_ < text_.size()) {
      if (starts_operand(text_[pos_])) throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return p;
  }

 private:
  static bool starts_operand(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactPoly expr() {
    ExactPoly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  ExactPoly term() {
    ExactPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  ExactPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  ExactPoly power() {
    ExactPoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("exponent must be a nonnegative integer", at);
      const std::string digits = read_digits();
      if (digits.size() > 6) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  ExactPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(read_digits());
      Integer den(1);
      if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("denominator must be an integer literal", at);
        den = Integer(read_digits());
        if (den == 0) throw ParseError("zero denominator", at);
      }
      expect_no_juxtaposition();
      Rational q(num, den);
      q.canonicalize();
      return ExactPoly::constant(vars_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) {
          expect_no_juxtaposition();
          return ExactPoly::variable(vars_.size(), i);
        }
      throw ParseError("unknown variable '" + name + "'", at);
    }
    if (c == '(') {
      ++pos_;
      ExactPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      expect_no_juxtaposition();
      return inner;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void expect_no_juxtaposition() {
    std::size_t p = pos_;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size() && starts_operand(text_[p]))
      throw ParseError("implicit multiplication is not allowed", p);
  }

  std::string read_digits() {
    std::string d;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) d += text_[pos_++];
    return d;
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

inline bool valid_variable_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace detail

inline ExactPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  if (vars.empty()) throw ParseError("variable list is empty", 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!detail::valid_variable_name(vars[i])) throw ParseError("invalid variable name '" + vars[i] + "'", 0);
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i] == vars[j]) throw ParseError("duplicate variable name '" + vars[i] + "'", 0);
  }
  return detail::PolyParser(text, vars).parse();
}

/// Splits "x,y,z" on commas, trimming whitespace.
inline std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    while (b < e && std::isspace(static_cast<unsigned char>(cur[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(cur[e - 1]))) --e;
    out.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

}  // namespace lglab
