#pragma once
// Differential structure on top of the graded jet algebra: total time
// derivative, left partials (explicit and through dependent scalars),
// graded derivations given by their values on generators, the Euler
// operator, variational splitting into Euler terms plus a boundary
// potential, and a greedy integration-by-parts reducer.

#include "worldline/algebra.hpp"

#include <map>
#include <vector>

namespace worldline {

// total d/dt along the jet towers; throws when a tower runs out
GradedExpr time_derivative(const GradedExpr& e);
GradedExpr time_derivative(const GradedExpr& e, int k);

// left partial with respect to one generator, other generators held fixed
GradedExpr partial(const GradedExpr& e, GenId x);

// left partial seeing through dependent scalars by the chain rule
GradedExpr chain_partial(const GradedExpr& e, GenId x);

// graded derivation determined by values on generators.  Values may be set
// on order-0 fields (extended to jets by commuting with d/dt), on d-symbols,
// or on individual jets directly.  Generators without a value map to zero;
// dependent scalars chain through their partials.
struct Derivation {
  const Algebra* alg = nullptr;
  int parity = 0;  // 0 even, 1 odd
  std::map<GenId, GradedExpr> vals;

  void set(GenId g, GradedExpr v) { vals[g] = std::move(v); }
};

GradedExpr apply(const Derivation& D, const GradedExpr& e);

// Euler operator sum_k (-d/dt)^k chain_partial(., phi^(k)) for the order-0
// generator phi
GradedExpr euler_derivative(const GradedExpr& density, GenId phi);

// de Rham differential on field space: every non-constant generator x gets
// delta(x) = dx.  The algebra must carry d-symbols.
GradedExpr field_variation(const GradedExpr& density);

// delta(density) = d/dt(boundary) + sum_phi d(phi) * euler[phi]; computed by
// moving time derivatives off the d-symbols.  Independent of
// euler_derivative, which the tests use as an oracle against this.
struct VariationalSplit {
  GradedExpr boundary;
  std::vector<std::pair<GenId, GradedExpr>> euler;  // order-0 generator -> left coefficient
};
VariationalSplit variational_split(const GradedExpr& density);

// greedy search for p with d/dt(p) = e; residue holds what would not reduce
struct IbpResult {
  bool exact = false;
  GradedExpr potential;
  GradedExpr residue;
};
IbpResult ibp_reduce(const GradedExpr& e);

inline bool is_total_derivative(const GradedExpr& e, GradedExpr* potential = nullptr) {
  IbpResult r = ibp_reduce(e);
  if (r.exact && potential) *potential = r.potential;
  return r.exact;
}

// map an expression into another algebra.  Bound order-0 generators are
// replaced by their images (jets prolonged with d/dt); everything else maps
// to the generator of the same name in the target algebra.
GradedExpr substitute(const GradedExpr& e, const Algebra& to,
                      const std::map<GenId, GradedExpr>& bindings);

}  // namespace worldline
