#pragma once
// Text grammar for expressions.  Round-trips with to_string:
//
//   expr     := term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := '-' factor | primary ('^' exponent)?
//   primary  := integer | ident | '(' expr ')' | 'D' '[' integer ']' ident
//   exponent := integer | '-' integer | '(' ['-'] integer ['/' integer] ')'
//
// Identifiers are generator names; derivative order is spelled either with
// trailing primes (q1'') or the D[k] prefix form (D[2]q1).

#include "worldline/algebra.hpp"

namespace worldline {

struct ParseError : AlgebraError {
  explicit ParseError(const std::string& what) : AlgebraError(what) {}
};

GradedExpr parse_expr(const Algebra& alg, const std::string& text);

}  // namespace worldline
