#pragma once
// Generator table for a graded jet algebra on an interval: fields carry
// towers of time derivatives, dependent scalars carry chain-rule partials,
// boundary algebras carry d-symbols (one-form generators), and declared
// sum-contraction rules give expressions a canonical reduced form.

#include "worldline/expr.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace worldline {

enum class Parity : int { even = 0, odd = 1 };

// sort class drives the canonical factor order inside monomials
enum class GenClass : int { constant = 0, field = 1, antifield = 2, unknown = 3 };

struct GenInfo {
  std::string name;        // printable/parsable identifier ("q1'", "xi_a", "dq1")
  Parity parity = Parity::even;
  long ghost = 0;
  bool positive = false;   // allows fractional and negative exponents
  GenClass klass = GenClass::field;
  int form_degree = 0;     // 1 for d-symbols

  GenId base = kNoGen;     // tower base for jets, underlying gen for d-symbols
  int jet_order = 0;
  GenId next_jet = kNoGen;
  GenId dsymbol = kNoGen;  // d-symbol of this generator, if created
  GenId dsym_of = kNoGen;  // set on d-symbols: the underlying generator

  bool dependent = false;  // has chain-rule partials instead of being free
  int ibp_level = 0;       // jet depth used when hunting total derivatives

  // sort key pieces (precomputed): see Algebra::rank_less
  int key_dsym = 0;
  std::string key_base;    // base name without derivative primes
};

// multi-term rewrite rule: sum of lhs monomials => rhs, fired all-or-nothing
// on an anchor match of lhs[0].  Declared rhs must be smaller than every lhs
// monomial in the term order, which makes reduction terminate.
struct Relation {
  std::string name;
  std::vector<Term> lhs;
  GradedExpr rhs;
};

class Algebra {
 public:
  static constexpr int kMaxJet = 8;

  // expressions and relations hold stable pointers to their algebra
  Algebra() = default;
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;
  Algebra(Algebra&&) = delete;
  Algebra& operator=(Algebra&&) = delete;

  // --- declaration -----------------------------------------------------
  GenId constant(const std::string& name, bool positive = false);

  // field with an automatic derivative tower; returns the order-0 id
  GenId field(const std::string& name, Parity p = Parity::even, long ghost = 0,
              bool positive = false, int tower = kMaxJet);

  // ghost-for-ghost style shorthand
  GenId ghost_field(const std::string& name, long ghost = 1) {
    return field(name, ghost % 2 ? Parity::odd : Parity::even, ghost);
  }

  // antifield partner: opposite parity, ghost -1-gh, name + "_a"
  GenId antifield(GenId field_gen, int tower = kMaxJet);

  // unknown coefficient for ansatz solving (no tower, no derivatives)
  GenId unknown(const std::string& name, Parity p = Parity::even, long ghost = 0);

  // dependent scalar (even, ghost 0) with a derivative tower; chain-rule
  // partials are registered afterwards with set_partial and prolonged with
  // finalize_dependent
  GenId dependent(const std::string& name, bool positive = false, int tower = 4);
  void set_partial(GenId dep, GenId arg, const GradedExpr& value);
  void finalize_dependent(GenId dep);

  // d-symbols for every generator declared so far (boundary algebras)
  void create_dsymbols();

  void add_relation(const std::string& name, const GradedExpr& lhs, const GradedExpr& rhs);

  // --- lookup ------------------------------------------------------------
  GenId find(const std::string& name) const;           // kNoGen when absent
  GenId require(const std::string& name) const;        // throws when absent
  GenId jet(GenId base, int order) const;              // throws past the tower
  GenId dsym(GenId g) const;
  const GenInfo& info(GenId g) const { return gens_[static_cast<std::size_t>(g)]; }
  std::size_t num_gens() const { return gens_.size(); }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<std::pair<GenId, GradedExpr>>* partials(GenId dep) const;
  const std::map<GenId, std::vector<std::pair<GenId, GradedExpr>>>& dependent_partials() const {
    return partials_;
  }

  bool rank_less(GenId a, GenId b) const;

  // --- expression factories ----------------------------------------------
  GradedExpr zero() const { return GradedExpr(this); }
  GradedExpr num(const Coeff& c) const;
  GradedExpr gen(GenId g) const;
  GradedExpr gen(const std::string& name) const { return gen(require(name)); }
  GradedExpr gen_pow(GenId g, const Rat& e) const;

 private:
  GenId add_gen(GenInfo gi);
  void make_tower(GenId base, int depth);

  std::vector<GenInfo> gens_;
  std::map<std::string, GenId> by_name_;
  std::vector<Relation> relations_;
  std::map<GenId, std::vector<std::pair<GenId, GradedExpr>>> partials_;
};

}  // namespace worldline
