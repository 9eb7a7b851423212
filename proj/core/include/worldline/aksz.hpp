#pragma once
// One-dimensional AKSZ construction.  A target carries graded Darboux
// coordinates, a primitive one-form alpha and a degree-1 hamiltonian sigma
// with {sigma, sigma} = 0.  Superfields over the interval expand into a
// zero-form component plus a one-form component against the odd line symbol;
// integrating selects the top part and yields a component BV theory.  The
// momenta can then be eliminated to reach the second-order formulation.

#include <memory>
#include <string>
#include <vector>

#include "worldline/bracket.hpp"
#include "worldline/theory.hpp"

namespace worldline {

struct TargetData {
  std::string name;
  int source_dim = 1;  // recorded for documentation; only 1 is accepted
  std::unique_ptr<Algebra> alg;
  std::vector<DarbouxPair> pairs;  // structure of d(alpha)
  GradedExpr alpha;                // primitive one-form
  GradedExpr sigma;                // hamiltonian, ghost number +1
  std::unique_ptr<PhaseSpace> phase;

  // quadratic data sigma is assembled from: sigma = (1/2 G^{ij}(p_i - A_i)
  // (p_j - A_j) + W - 1/2 F_ij theta^i theta^j) c + odd-sector terms
  std::vector<GenId> momenta;
  std::vector<GenId> coords;
  std::vector<std::vector<GradedExpr>> metric_upper;  // G^{ij}
  std::vector<GradedExpr> gauge;                      // A_i(q)
  GradedExpr potential_w;                             // W(q)
  std::vector<std::string> abstract_roots;            // abstract scalar families in use
  GenId ghost = kNoGen;      // c
  GenId ghost_mom = kNoGen;  // b

  // odd sector, empty for the ordinary targets
  std::vector<GenId> thetas;
  std::vector<std::vector<GradedExpr>> theta_pairing;  // constant G_ij
  GenId super_ghost = kNoGen;      // gamma, even, ghost +1
  GenId super_ghost_mom = kNoGen;  // sigma, even, ghost -1
  GradedExpr phi;                  // odd constraint when the sector is present

  const Algebra& algebra() const { return *alg; }
};

// p_i, q_i pairs plus the odd ghost pair (b, c); alpha = sum p dq + b dc.
// Metric, gauge field and potential start empty; sigma is assembled by
// finish_quadratic_target.  with_potential adds the abstract scalar V(q).
TargetData target_skeleton(std::string name, int dim, bool with_potential);

// builds sigma = (1/2 G^{ij}(p-A)_i(p-A)_j + W)c from the stored quadratic
// data, constructs the bracket and checks {sigma, sigma} = 0
void finish_quadratic_target(TargetData& t);

// extends a skeleton with odd coordinates theta^i carrying the constant
// pairing given, the even ghost pair (gamma, sigma), and the hamiltonian
// f c + phi gamma + gamma^2 b with phi = (p - A)·theta and f = 1/2 {phi, phi}
TargetData build_super_target(TargetData base, const std::vector<std::vector<Rat>>& theta_pairing);

// the cataloged targets
TargetData gravity_target(int dim);        // G = id/m, A = 0, W = V(q) - E
TargetData general_weight_target(int dim); // diagonal constant metric, abstract A and W
TargetData minisuperspace_target();        // coords (chi, a), G = a(dchi^2 - da^2), cubic W
TargetData free_target(int dim);           // sigma = 0
TargetData spinning_flat_target();         // n = 3, flat pairing, magnetic gauge field

// expansion rows: target generator -> signed zero-form and one-form
// component names
struct SuperfieldRow {
  std::string target;
  int zero_sign = 1;
  std::string zero;
  int one_sign = 1;
  std::string one;
};
std::vector<SuperfieldRow> superfield_rows(const TargetData& t);

// component BV theory on the interval
struct AkszTheory {
  TheoryDef def;
  std::vector<GenId> coords;        // q_i in the component algebra
  std::vector<GenId> momenta;       // p_i in the component algebra
  std::vector<GenId> momenta_anti;  // their antifields, gauge-fixed by elimination
  GenId einbein = kNoGen;           // e, the one-form component of the ghost superfield
  // target metric, gauge field and scalar families mapped into the component
  // algebra, kept for the momentum elimination
  std::vector<std::vector<GradedExpr>> metric_comp;
  std::vector<GradedExpr> gauge_comp;
  std::vector<std::string> abstract_roots;
};

AkszTheory build_aksz_action(const TargetData& t);

// gauge-fixes the momentum antifields to zero, solves the stationarity
// equations for p (diagonal nondegenerate metric required) and substitutes,
// producing the second-order theory
TheoryDef eliminate_momenta(const AkszTheory& t);

}  // namespace worldline
