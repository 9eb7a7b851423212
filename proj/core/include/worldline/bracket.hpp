#pragma once
// Graded Poisson brackets from a constant-Darboux symplectic form.  The
// Hamiltonian vector field of f is solved mechanically from i_X omega = df
// and verified by substitution, so every sign is forced by the conventions
// of the exterior calculus rather than chosen by hand.

#include "worldline/forms.hpp"

namespace worldline {

// one summand of omega: coeff * d(a) ^ d(b); a == b is allowed for odd a
struct DarbouxPair {
  GenId a = kNoGen;
  GenId b = kNoGen;
  GradedExpr coeff;
};

class PhaseSpace {
 public:
  // declares hidden solver slots on the algebra, so construct once per algebra
  PhaseSpace(Algebra& alg, std::vector<DarbouxPair> pairs);

  const Algebra& algebra() const { return *alg_; }
  GradedExpr symplectic_form() const;

  // components of X_f with i_{X_f} omega = d f
  std::map<GenId, GradedExpr> hamiltonian_components(const GradedExpr& f) const;

  // {f, g} = X_f(g)
  GradedExpr bracket(const GradedExpr& f, const GradedExpr& g) const;

 private:
  const Algebra* alg_;
  std::vector<DarbouxPair> pairs_;
  std::vector<GenId> coords_;
  std::map<std::pair<GenId, int>, GenId> slots_;  // (coordinate, component parity)
};

}  // namespace worldline
