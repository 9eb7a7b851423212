#include "worldline/expr.hpp"

#include "worldline/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace worldline {

namespace {

bool odd_factor(const Algebra& alg, const Factor& f) {
  return alg.info(f.g).parity == Parity::odd;  // odd gens carry exponent 1 only
}

// structural (not order-theoretic) comparison used for term grouping
int cmp_monomial_struct(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].g != b[i].g) return a[i].g < b[i].g ? -1 : 1;
    if (a[i].e != b[i].e) return a[i].e < b[i].e ? -1 : 1;
  }
  return 0;
}

int cmp_radical(const Radical& a, const Radical& b) {
  if (a != b) return a < b ? -1 : 1;
  return 0;
}

}  // namespace

std::pair<int, Monomial> mul_monomials(const Algebra& alg, const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  int sign = 1;
  // suffix counts of odd factors in a: crossing them flips the sign
  std::vector<int> suff(a.size() + 1, 0);
  for (std::size_t i = a.size(); i-- > 0;) suff[i] = suff[i + 1] + (odd_factor(alg, a[i]) ? 1 : 0);
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i < a.size() && a[i].g == b[j].g) {
      if (odd_factor(alg, b[j])) {
        if (odd_factor(alg, a[i])) return {0, {}};  // nilpotent square
        if (suff[i + 1] & 1) sign = -sign;
      }
      Rat e = a[i].e + b[j].e;
      if (e != 0) out.push_back({a[i].g, e});
      ++i;
      ++j;
      continue;
    }
    if (i < a.size() && alg.rank_less(a[i].g, b[j].g)) {
      out.push_back(a[i++]);
    } else {
      if (odd_factor(alg, b[j]) && (suff[i] & 1)) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  return {sign, std::move(out)};
}

std::pair<int, Monomial> divide_monomial(const Algebra& alg, const Monomial& m, const Monomial& pat) {
  Monomial cof;
  std::size_t i = 0;
  for (const Factor& p : pat) {
    while (i < m.size() && m[i].g != p.g) cof.push_back(m[i++]);
    if (i == m.size()) return {0, {}};
    Rat rem = m[i].e - p.e;
    const GenInfo& gi = alg.info(p.g);
    bool ok;
    if (gi.parity == Parity::odd) {
      ok = rem == 0;
    } else if (gi.positive) {
      ok = true;
    } else {
      ok = rem >= 0 && is_integer(rem);
    }
    if (!ok) return {0, {}};
    if (rem != 0) cof.push_back({m[i].g, rem});
    ++i;
  }
  while (i < m.size()) cof.push_back(m[i++]);
  auto [sign, prod] = mul_monomials(alg, pat, cof);
  if (sign == 0 || cmp_monomial_struct(prod, m) != 0)
    throw AlgebraError("internal: monomial division mismatch");
  return {sign, std::move(cof)};
}

bool monomial_less(const Algebra& alg, const Monomial& a, const Monomial& b) {
  Rat da(0), db(0);
  for (const Factor& f : a) da += f.e;
  for (const Factor& f : b) db += f.e;
  if (da != db) return da < db;
  // graded lex: first rank position where exponents differ decides;
  // larger exponent on the earlier generator means the larger monomial
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].g == b[j].g) {
      if (a[i].e != b[j].e) return a[i].e < b[j].e;
      ++i;
      ++j;
    } else if (alg.rank_less(a[i].g, b[j].g)) {
      return a[i].e < 0;  // b has exponent 0 on this earlier generator
    } else {
      return b[j].e > 0;
    }
  }
  if (i < a.size()) return a[i].e < 0;
  if (j < b.size()) return b[j].e > 0;
  return false;
}

// ---------------------------------------------------------------------------
// GradedExpr
// ---------------------------------------------------------------------------

void GradedExpr::push_term(const Coeff& c, Monomial m) {
  if (c.is_zero()) return;
  // canonicalize the factor list one factor at a time (inputs are tiny)
  Monomial sorted;
  int sign = 1;
  for (const Factor& f : m) {
    if (f.e == 0) continue;
    auto [s, prod] = mul_monomials(*alg_, sorted, Monomial{f});
    if (s == 0) return;
    sign *= s;
    sorted = std::move(prod);
  }
  Term t;
  t.c = sign < 0 ? neg(c) : c;
  t.m = std::move(sorted);
  terms_.push_back(std::move(t));
}

GradedExpr GradedExpr::operator-() const {
  GradedExpr out = *this;
  for (Term& t : out.terms_) t.c = neg(t.c);
  return out;
}

GradedExpr& GradedExpr::operator+=(const GradedExpr& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty() && !alg_) alg_ = o.alg_;
  if (o.alg_ != alg_) throw AlgebraError("mixing expressions from different algebras");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

GradedExpr& GradedExpr::operator-=(const GradedExpr& o) { return *this += -o; }

GradedExpr& GradedExpr::operator*=(const GradedExpr& o) {
  if (terms_.empty()) return *this;
  if (o.terms_.empty()) {
    terms_.clear();
    return *this;
  }
  if (o.alg_ != alg_) throw AlgebraError("mixing expressions from different algebras");
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const Term& ta : terms_) {
    for (const Term& tb : o.terms_) {
      auto [sign, m] = mul_monomials(*alg_, ta.m, tb.m);
      if (sign == 0) continue;
      Coeff c = mul(ta.c, tb.c);
      if (sign < 0) c = neg(c);
      if (!c.is_zero()) prod.push_back({std::move(c), std::move(m)});
    }
  }
  terms_ = std::move(prod);
  normalize();
  return *this;
}

GradedExpr GradedExpr::scaled(const Coeff& k) const {
  GradedExpr out(alg_);
  if (k.is_zero()) return out;
  out.terms_ = terms_;
  for (Term& t : out.terms_) t.c = mul(t.c, k);
  out.normalize();
  return out;
}

namespace {

// combine equal (monomial, radical) keys and drop zero coefficients
void combine_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    int c = cmp_monomial_struct(a.m, b.m);
    if (c != 0) return c < 0;
    return cmp_radical(a.c.rad, b.c.rad) < 0;
  });
  std::vector<Term> out;
  for (Term& t : terms) {
    if (!out.empty() && cmp_monomial_struct(out.back().m, t.m) == 0 &&
        cmp_radical(out.back().c.rad, t.c.rad) == 0) {
      out.back().c = add_same_radical(out.back().c, t.c);
      if (out.back().c.is_zero()) out.pop_back();
    } else if (!t.c.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  terms = std::move(out);
}

const Term* find_term(const std::vector<Term>& terms, const Monomial& m, const Radical& rad) {
  for (const Term& t : terms)
    if (cmp_radical(t.c.rad, rad) == 0 && cmp_monomial_struct(t.m, m) == 0) return &t;
  return nullptr;
}

// one rewrite pass: returns true when a rule fired
bool fire_once(const Algebra& alg, std::vector<Term>& terms) {
  for (const Term& t : terms) {
    for (const Relation& rel : alg.relations()) {
      const Term& anchor = rel.lhs.front();
      auto [sign, cof] = divide_monomial(alg, t.m, anchor.m);
      if (sign == 0) continue;
      Coeff scale = div(t.c, sign < 0 ? neg(anchor.c) : anchor.c);
      // Every other lhs monomial must sit in the expression with a compatible
      // coefficient (instances that vanish by nilpotency are exempt).  The
      // per-instance scales need not agree: subtracting s*(lhs - rhs)*cof is
      // valid for any s, so when they merely share a sign we fire at the
      // smallest magnitude — that zeroes at least one instance and shrinks
      // the rest without flipping signs, so passes cannot oscillate.  All
      // scales share the anchor's radical family (find_term keys on it), so
      // the rational parts compare directly.
      bool ok = true;
      Coeff fire_scale = scale;
      for (std::size_t k = 1; k < rel.lhs.size() && ok; ++k) {
        auto [ps, pm] = mul_monomials(alg, rel.lhs[k].m, cof);
        if (ps == 0) continue;
        Coeff needed = mul(rel.lhs[k].c, scale);
        if (ps < 0) needed = neg(needed);
        const Term* found = find_term(terms, pm, needed.rad);
        if (!found) {
          ok = false;
          break;
        }
        Coeff sk = div(ps < 0 ? neg(found->c) : found->c, rel.lhs[k].c);
        if ((sk.rat < 0) != (fire_scale.rat < 0)) {
          ok = false;
          break;
        }
        if (abs(sk.rat) < abs(fire_scale.rat)) fire_scale = sk;
      }
      if (!ok) continue;
      // subtract fire_scale * (sum(lhs) - rhs) * cof
      GradedExpr delta(&alg);
      for (const Term& l : rel.lhs) {
        auto [ls, lm] = mul_monomials(alg, l.m, cof);
        if (ls == 0) continue;
        Coeff c = mul(l.c, fire_scale);
        if (ls < 0) c = neg(c);
        delta.push_term(c, lm);
      }
      for (const Term& r : rel.rhs.terms()) {
        auto [rs, rm] = mul_monomials(alg, r.m, cof);
        if (rs == 0) continue;
        Coeff c = mul(r.c, fire_scale);
        if (rs < 0) c = neg(c);
        delta.push_term(neg(c), rm);
      }
      for (const Term& d : delta.terms()) {
        Term nt = d;
        nt.c = neg(nt.c);
        terms.push_back(std::move(nt));
      }
      combine_terms(terms);
      return true;
    }
  }
  return false;
}

}  // namespace

void GradedExpr::normalize() {
  if (!alg_) {
    terms_.clear();
    return;
  }
  combine_terms(terms_);
  if (!alg_->relations().empty()) {
    int guard = 0;
    while (fire_once(*alg_, terms_)) {
      if (++guard > 20000) throw AlgebraError("rewrite system did not reach a fixed point");
    }
  }
  const Algebra& alg = *alg_;
  std::sort(terms_.begin(), terms_.end(), [&alg](const Term& a, const Term& b) {
    if (cmp_monomial_struct(a.m, b.m) != 0)
      return monomial_less(alg, b.m, a.m);  // descending: leading term first
    return coeff_cmp(a.c, b.c) < 0;
  });
}

// ---------------------------------------------------------------------------
// gradings
// ---------------------------------------------------------------------------

int term_parity(const Algebra& alg, const Term& t) {
  int p = 0;
  for (const Factor& f : t.m)
    if (alg.info(f.g).parity == Parity::odd) p ^= 1;
  return p;
}

long term_ghost(const Algebra& alg, const Term& t) {
  Rat g(0);
  for (const Factor& f : t.m) g += f.e * alg.info(f.g).ghost;
  return to_long(g);
}

long term_form_degree(const Algebra& alg, const Term& t) {
  Rat d(0);
  for (const Factor& f : t.m) d += f.e * alg.info(f.g).form_degree;
  return to_long(d);
}

namespace {

template <typename F>
long uniform_grade(const GradedExpr& e, F grade, const char* what) {
  if (e.is_zero()) return 0;
  long g0 = grade(*e.algebra(), e.terms().front());
  for (const Term& t : e.terms())
    if (grade(*e.algebra(), t) != g0)
      throw AlgebraError(std::string("expression is not homogeneous in ") + what);
  return g0;
}

}  // namespace

int expr_parity(const GradedExpr& e) {
  return static_cast<int>(uniform_grade(
      e, [](const Algebra& a, const Term& t) { return static_cast<long>(term_parity(a, t)); },
      "parity"));
}

long expr_ghost(const GradedExpr& e) {
  return uniform_grade(e, [](const Algebra& a, const Term& t) { return term_ghost(a, t); },
                       "ghost number");
}

long expr_form_degree(const GradedExpr& e) {
  return uniform_grade(e, [](const Algebra& a, const Term& t) { return term_form_degree(a, t); },
                       "form degree");
}

bool expr_equal(const GradedExpr& a, const GradedExpr& b) {
  GradedExpr d = a;
  d -= b;
  return d.is_zero();
}

GradedExpr expr_pow(const GradedExpr& x, const Rat& e) {
  const Algebra* alg = x.algebra();
  if (e == 0) {
    GradedExpr one(alg);
    one.push_term(Coeff(1), {});
    return one;
  }
  if (is_integer(e) && e > 0) {
    long n = to_long(e);
    GradedExpr acc = x;
    for (long k = 1; k < n; ++k) acc *= x;
    return acc;
  }
  if (x.size() != 1) throw AlgebraError("fractional or negative power of a non-monomial expression");
  const Term& t = x.terms().front();
  GradedExpr out(alg);
  Monomial m;
  for (const Factor& f : t.m) {
    Rat fe = f.e * e;
    if (fe == 0) continue;
    const GenInfo& gi = alg->info(f.g);
    bool ok;
    if (gi.parity == Parity::odd)
      ok = fe == 1;
    else if (gi.positive)
      ok = true;
    else
      ok = is_integer(fe) && fe > 0;
    if (!ok) throw AlgebraError("power produces an invalid exponent on " + gi.name);
    m.push_back({f.g, fe});
  }
  out.push_term(coeff_pow(t.c, e), std::move(m));
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

namespace {

void print_exponent(std::ostream& os, const Rat& e) {
  if (e == 1) return;
  if (is_integer(e) && e > 0) {
    os << "^" << e;
  } else {
    os << "^(" << rat_to_string(e) << ")";
  }
}

}  // namespace

std::string term_to_string(const Algebra& alg, const Term& t) {
  std::ostringstream os;
  bool lead = true;
  Rat r = t.c.rat;
  if (r < 0) r = -r;
  if (r != 1 || (t.c.rad.empty() && t.m.empty())) {
    os << rat_to_string(r);
    lead = false;
  }
  for (const auto& [p, e] : t.c.rad) {
    if (!lead) os << "*";
    os << p;
    print_exponent(os, e);
    lead = false;
  }
  for (const Factor& f : t.m) {
    if (!lead) os << "*";
    os << alg.info(f.g).name;
    print_exponent(os, f.e);
    lead = false;
  }
  return os.str();
}

std::string to_string(const GradedExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : e.terms()) {
    bool negative = t.c.rat < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    os << term_to_string(*e.algebra(), t);
    first = false;
  }
  return os.str();
}

}  // namespace worldline
