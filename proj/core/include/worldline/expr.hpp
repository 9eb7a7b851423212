#pragma once
// Graded-commutative expressions: flat sums of terms, each an exact
// coefficient times a sorted power product of generators.  The monomial
// together with the coefficient's radical part is the merge key, so
// sqrt(2)*x and 3*x stay distinct terms while 2*x and x combine.

#include "worldline/coeff.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace worldline {

class Algebra;

using GenId = std::int32_t;
inline constexpr GenId kNoGen = -1;

struct Factor {
  GenId g = kNoGen;
  Rat e;  // exponent; odd generators only 0/1, fractional only on positive even ones

  friend bool operator==(const Factor& a, const Factor& b) { return a.g == b.g && a.e == b.e; }
};

using Monomial = std::vector<Factor>;  // sorted by generator rank, exponents nonzero

struct Term {
  Coeff c;
  Monomial m;
};

class GradedExpr {
 public:
  GradedExpr() = default;
  explicit GradedExpr(const Algebra* a) : alg_(a) {}

  const Algebra* algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  GradedExpr operator-() const;
  GradedExpr& operator+=(const GradedExpr& o);
  GradedExpr& operator-=(const GradedExpr& o);
  GradedExpr& operator*=(const GradedExpr& o);
  friend GradedExpr operator+(GradedExpr a, const GradedExpr& b) { return a += b; }
  friend GradedExpr operator-(GradedExpr a, const GradedExpr& b) { return a -= b; }
  friend GradedExpr operator*(GradedExpr a, const GradedExpr& b) { return a *= b; }

  GradedExpr scaled(const Coeff& k) const;

  // structural building blocks (normalize afterwards)
  void push_term(const Coeff& c, Monomial m);

  // canonical form: combine keys, drop zeros, run the algebra's rewrite
  // rules to a fixed point, sort terms leading-first
  void normalize();

 private:
  const Algebra* alg_ = nullptr;
  std::vector<Term> terms_;
};

// --- free functions needing only expression data + the algebra ------------

// merge two canonical monomials; returns {sign, product}, sign 0 when the
// product vanishes by odd nilpotency
std::pair<int, Monomial> mul_monomials(const Algebra& alg, const Monomial& a, const Monomial& b);

// does `pat` divide `m` factorwise?  If so return {sign, cofactor} with
// m == sign * pat * cofactor; otherwise sign 0.
std::pair<int, Monomial> divide_monomial(const Algebra& alg, const Monomial& m, const Monomial& pat);

bool monomial_less(const Algebra& alg, const Monomial& a, const Monomial& b);

int term_parity(const Algebra& alg, const Term& t);   // 0 even, 1 odd
long term_ghost(const Algebra& alg, const Term& t);
long term_form_degree(const Algebra& alg, const Term& t);

// grading of a whole expression; throws when terms disagree
int expr_parity(const GradedExpr& e);
long expr_ghost(const GradedExpr& e);
long expr_form_degree(const GradedExpr& e);

bool expr_equal(const GradedExpr& a, const GradedExpr& b);

// x^e where fractional/negative powers require a single invertible term
GradedExpr expr_pow(const GradedExpr& x, const Rat& e);

std::string to_string(const GradedExpr& e);
std::string term_to_string(const Algebra& alg, const Term& t);

}  // namespace worldline
