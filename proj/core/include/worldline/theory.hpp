#pragma once
// Catalog of one-dimensional reparametrization-invariant theories in BV form:
// graded jet algebras with an action density, conjugate field/antifield pairs,
// and the cohomological vector field derived from the action.  The checkers
// verify nilpotency, invariance up to boundary terms, the master equation
// with boundary one-form, and the symplectomorphisms between formulations.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "worldline/forms.hpp"

namespace worldline {

// role of the energy parameter: a fixed constant, a dynamical variable that
// is still constant in time, or a full profile E(t)
enum class EnergyMode { fixed, variable, profile };

struct FieldPair {
  GenId field = kNoGen;
  GenId antifield = kNoGen;
};

struct TheoryDef {
  std::string name;
  std::unique_ptr<Algebra> alg;
  GradedExpr density;  // ghost number 0, even
  std::vector<FieldPair> pairs;
  Derivation brst;
  std::vector<GenId> vanish_at_endpoints;
  EnergyMode energy = EnergyMode::fixed;
  int dim = 1;

  const Algebra& algebra() const { return *alg; }
};

// names accepted by build_theory, in catalog order
const std::vector<std::string>& theory_names();

// declares an abstract scalar S(q) as dependent generators S, Sq_i, Sq_iq_j
// (second level symmetric, shared between index orders) with chain-rule
// partials and the contraction relations that let d/dt close on the family;
// returns the id of S
GenId abstract_scalar(Algebra& alg, const std::string& base, const std::vector<GenId>& qs);

// dim = number of position coordinates where the theory is dimension-generic;
// unknown names raise an error that lists the catalog
TheoryDef build_theory(const std::string& name, int dim = 2);

// Q read off from the action: each antifield receives the Euler expression of
// its conjugate field and vice versa, with a sign depending only on the ghost
// number of the varied partner.  One convention for every theory; the checks
// below falsify it if it is wrong anywhere.
Derivation brst_from_action(const Algebra& alg, const GradedExpr& density,
                            const std::vector<FieldPair>& pairs);

enum class ResidueClass { zero, zero_on_boundary, nonzero };

struct NilpotencyEntry {
  GenId gen = kNoGen;
  ResidueClass cls = ResidueClass::nonzero;
  GradedExpr square;     // Q²(gen)
  GradedExpr potential;  // filled when square = d/dt(potential)
};

// Q² on every paired generator; nonzero squares that integrate to a boundary
// term vanishing under the declared endpoint conditions are classified as
// zero_on_boundary
std::vector<NilpotencyEntry> check_q_nilpotency(const TheoryDef& t);

struct InvarianceResult {
  bool invariant = false;
  GradedExpr potential;  // Q(density) = d/dt(potential)
  GradedExpr residue;
};

InvarianceResult check_action_invariance(const TheoryDef& t);

struct BvBfvResult {
  bool holds = false;
  GradedExpr alpha;    // boundary one-form from the variational split
  GradedExpr omega;    // BV two-form density used for the pairing check
  GradedExpr residue;  // i_Q(omega) - sum_z d(z)·E_z(density)
};

// checks that contracting Q into the BV two-form reproduces the Euler part of
// the variation, and returns the boundary one-form of the split
BvBfvResult check_bvbfv_equation(const TheoryDef& t);

struct TransformationDef {
  std::string name;
  const Algebra* from = nullptr;
  const Algebra* to = nullptr;
  std::map<GenId, GradedExpr> bindings;          // from-generator -> expr over to
  std::map<GenId, GradedExpr> inverse_bindings;  // to-generator -> expr over from
};

// zeta = ||q'|| xi between the two Jacobi formulations
TransformationDef speed_ghost_transformation(const TheoryDef& jac, const TheoryDef& rewritten);
// c = sqrt(g) xi with the antifield shift, gravity -> abelianized gravity
TransformationDef abelianizing_transformation(const TheoryDef& grav, const TheoryDef& abelian);

struct TransformResult {
  bool equal = false;
  bool exact = false;  // densities agree before integration by parts
  GradedExpr mapped;
  GradedExpr potential;  // mapped - target density = d/dt(potential)
  GradedExpr residue;
};

TransformResult apply_field_transformation(const TheoryDef& t, const TransformationDef& tr,
                                           const TheoryDef& target);

// bindings followed by inverse_bindings is the identity on both algebras
bool transformation_round_trip(const TransformationDef& tr);

}  // namespace worldline
