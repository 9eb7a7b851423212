#pragma once
// Endpoint structure of the worldline theories.  The variational boundary
// term of the action density is a one-form on endpoint jets; its exterior
// derivative is the pre-boundary two-form.  This module analyses the kernel
// of that two-form (the directions that must be quotiented away), probes
// where the kernel rank jumps, and reduces the regular theories to a Darboux
// chart carrying the constraint action, obtained from the double contraction
// i_Q i_E omega with the ghost-number Euler field E.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "worldline/aksz.hpp"

namespace worldline {

// boundary one-form together with its two-form; omega = d(alpha) always
struct PreBoundaryForm {
  const Algebra* alg = nullptr;
  GradedExpr alpha;
  GradedExpr omega;
};

PreBoundaryForm make_pre_boundary(const Algebra& alg, const GradedExpr& alpha);

// boundary term of the first variation of the action density
PreBoundaryForm pre_boundary_form(const TheoryDef& t);

// --------------------------------------------------------------------------
// kernel analysis
// --------------------------------------------------------------------------

// declares one unknown coefficient per generator whose d-symbol appears in
// omega; the candidate kernel field is the even, ghost-number-zero vector
// field sum_z K_z d/dz
std::map<GenId, GenId> kernel_ansatz(Algebra& alg, const PreBoundaryForm& pre,
                                     const std::string& prefix = "K");

// left coefficient of each one-form symbol in i_K omega; the ansatz lies in
// the kernel exactly when every lhs vanishes
struct KernelEquation {
  GenId form = kNoGen;  // generator whose d-symbol the coefficient multiplies
  GradedExpr lhs;
};
std::vector<KernelEquation> kernel_equations(const PreBoundaryForm& pre,
                                             const std::map<GenId, GenId>& ansatz);

// contraction of a concrete vector field into omega
struct KernelCheck {
  bool in_kernel = false;
  GradedExpr residue;
};
KernelCheck verify_kernel_field(const PreBoundaryForm& pre,
                                const std::map<GenId, GradedExpr>& components,
                                int vf_parity = 0);

// specialize a kernel system to a locus (e.g. the ghost set to zero) and
// report which equations collapse to identities there; a nonempty list means
// the kernel grows on the locus, i.e. the two-form is singular
struct SingularityReport {
  std::vector<std::size_t> vanished;  // indices into the input system
  std::vector<GradedExpr> specialized;
};
SingularityReport singularity_probe(const std::vector<KernelEquation>& eqs,
                                    const std::map<GenId, GradedExpr>& locus);

// --------------------------------------------------------------------------
// Darboux reduction
// --------------------------------------------------------------------------

// boundary chart with the constraint action and the bulk expressions the
// chart coordinates restrict; endpoint_conditions holds bulk bindings (a
// generator and its d-symbol sent to zero) the reduction imposes first
struct BFVData {
  std::unique_ptr<Algebra> alg;
  std::vector<GenId> coordinates;
  std::vector<DarbouxPair> pairs;
  std::unique_ptr<PhaseSpace> phase;
  GradedExpr alpha_boundary;
  GradedExpr s_boundary;  // odd, ghost number +1, {s, s} = 0
  std::map<GenId, GradedExpr> projection;           // chart gen -> bulk expression
  std::map<GenId, GradedExpr> endpoint_conditions;  // bulk-side bindings
};

// i_E omega with E the ghost-number Euler field
GradedExpr euler_contraction(const TheoryDef& t);

// the double contraction i_Q i_E omega: a bulk function that the projection
// map must present as the pullback of the boundary constraint action
GradedExpr roytenberg_density(const TheoryDef& t);

// Darboux chart, projection map and constraint action for the theories whose
// boundary two-form has a constant-rank kernel; throws for the singular ones
// naming the generator along which the rank jumps.  The returned data is
// verified internally against the double contraction before being handed out.
BFVData roytenberg_boundary_action(const TheoryDef& t);

// chart expression -> bulk expression through the projection map (d-symbols
// pull back to the variation of the projected image)
GradedExpr pull_back(const BFVData& bfv, const Algebra& bulk, const GradedExpr& chart_expr);

// pullback of alpha_boundary must reproduce the boundary one-form exactly or
// up to a closed (hence locally exact) residue, and the pullback of
// s_boundary must equal the double contraction
struct ProjectionCheck {
  bool alpha_exact = false;
  bool alpha_closed = false;
  bool action_matches = false;
  GradedExpr alpha_residue;
};
ProjectionCheck verify_projection(const TheoryDef& t, const BFVData& bfv);

// the target of an AKSZ theory is its own boundary chart: the chart clones
// the target data and the projection reads off the zero-form superfield
// components inside the given component theory
BFVData boundary_of_aksz(const TargetData& target, const TheoryDef& component);

}  // namespace worldline
