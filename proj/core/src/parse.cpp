#include "worldline/parse.hpp"

#include <cctype>

namespace worldline {

namespace {

struct Parser {
  const Algebra& alg;
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos) + " in \"" + s + "\"");
  }

  long integer() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  std::string ident() {
    skip();
    std::size_t start = pos;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto body = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (pos >= s.size() || !head(s[pos])) fail("expected identifier");
    ++pos;
    while (pos < s.size() && body(s[pos])) ++pos;
    while (pos < s.size() && s[pos] == '\'') ++pos;
    return s.substr(start, pos - start);
  }

  Rat exponent() {
    skip();
    if (eat('(')) {
      bool negative = eat('-');
      long num = integer();
      long den = eat('/') ? integer() : 1;
      if (!eat(')')) fail("expected ')' in exponent");
      Rat r = Rat(num) / den;
      return negative ? -r : r;
    }
    bool negative = eat('-');
    long num = integer();
    Rat r(num);
    return negative ? -r : r;
  }

  GradedExpr primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) return alg.num(Coeff(integer()));
    if (c == '(') {
      ++pos;
      GradedExpr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'D' && pos + 1 < s.size() && s[pos + 1] == '[') {
      pos += 2;
      long k = integer();
      if (!eat(']')) fail("expected ']'");
      std::string name = ident();
      GenId base = alg.require(name);
      return alg.gen(alg.jet(base, static_cast<int>(k)));
    }
    return alg.gen(alg.require(ident()));
  }

  GradedExpr factor() {
    if (eat('-')) return -factor();
    GradedExpr e = primary();
    if (eat('^')) e = expr_pow(e, exponent());
    return e;
  }

  GradedExpr term() {
    GradedExpr e = factor();
    for (;;) {
      if (eat('*')) {
        e *= factor();
      } else if (eat('/')) {
        e *= expr_pow(factor(), Rat(-1));
      } else {
        return e;
      }
    }
  }

  GradedExpr expr() {
    GradedExpr e = term();
    for (;;) {
      if (eat('+')) {
        e += term();
      } else if (eat('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }
};

}  // namespace

GradedExpr parse_expr(const Algebra& alg, const std::string& text) {
  Parser p{alg, text};
  GradedExpr e = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace worldline
