#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "worldline/golden.hpp"
#include "worldline/parse.hpp"
#include "worldline/theory.hpp"

using namespace worldline;

namespace {

GradedExpr pe(const TheoryDef& t, const std::string& text) {
  return parse_expr(t.algebra(), text);
}

GradedExpr q_of(const TheoryDef& t, const std::string& gen) {
  return apply(t.brst, t.algebra().gen(gen));
}

const NilpotencyEntry& entry_for(const std::vector<NilpotencyEntry>& entries, const TheoryDef& t,
                                 const std::string& gen) {
  GenId id = t.algebra().require(gen);
  for (const NilpotencyEntry& e : entries)
    if (e.gen == id) return e;
  REQUIRE(false);
  return entries.front();
}

}  // namespace

// ---------------------------------------------------------------------------
// catalog shape
// ---------------------------------------------------------------------------

TEST_CASE("catalog enumerates every formulation once") {
  const auto& names = theory_names();
  CHECK(names.size() == 12);
  for (const char* expected :
       {"jacobi", "jacobi_rewritten", "jacobi_extended", "jacobi_generalized", "gravity",
        "gravity_extended", "gravity_generalized", "gravity_abelianized",
        "aksz_gravity_first_order", "aksz_general_f", "minisuperspace", "spinning_flat"})
    CHECK(std::count(names.begin(), names.end(), expected) == 1);
}

TEST_CASE("unknown names raise an error that lists the catalog") {
  try {
    build_theory("nonsense");
    CHECK(false);
  } catch (const AlgebraError& err) {
    std::string what = err.what();
    CHECK(what.find("nonsense") != std::string::npos);
    for (const std::string& n : theory_names()) CHECK(what.find(n) != std::string::npos);
  }
  CHECK_THROWS_AS(build_theory("jacobi", 0), AlgebraError);
}

TEST_CASE("energy role is a theory attribute") {
  CHECK(build_theory("jacobi").energy == EnergyMode::fixed);
  CHECK(build_theory("jacobi_extended").energy == EnergyMode::variable);
  CHECK(build_theory("jacobi_generalized").energy == EnergyMode::profile);
  CHECK(build_theory("gravity_extended").energy == EnergyMode::variable);
  // the extended theories pair (E, E+); E is constant in time but varied
  TheoryDef ext = build_theory("gravity_extended");
  bool has_energy_pair = false;
  for (const FieldPair& p : ext.pairs)
    has_energy_pair |= p.field == ext.algebra().require("E");
  CHECK(has_energy_pair);
}

// ---------------------------------------------------------------------------
// square-root (geodesic length) formulation
// ---------------------------------------------------------------------------

TEST_CASE("length action density and brst") {
  TheoryDef t = build_theory("jacobi", 2);
  CHECK(expr_equal(t.density, pe(t,
      "2^(1/2)*E^(1/2)*m^(1/2)*r - q1'*xi*q1_a - q2'*xi*q2_a - xi*xi'*xi_a")));
  CHECK(expr_equal(q_of(t, "q1"), pe(t, "q1'*xi")));
  CHECK(expr_equal(q_of(t, "xi"), pe(t, "xi*xi'")));
  // the antifield of q receives the geodesic equation in arc-length form
  CHECK(expr_equal(q_of(t, "q1_a"),
                   pe(t, "xi*q1_a' + xi'*q1_a + 2^(1/2)*E^(1/2)*m^(1/2)*q1'*r^(-2)*r'"
                         " - 2^(1/2)*E^(1/2)*m^(1/2)*q1''*r^(-1)")));
  CHECK(expr_equal(q_of(t, "xi_a"), pe(t, "q1'*q1_a + q2'*q2_a + xi*xi_a' + 2*xi'*xi_a")));

  for (const NilpotencyEntry& e : check_q_nilpotency(t)) CHECK(e.cls == ResidueClass::zero);
  InvarianceResult inv = check_action_invariance(t);
  CHECK(inv.invariant);
  CHECK(expr_equal(inv.potential, pe(t, "2^(1/2)*E^(1/2)*m^(1/2)*r*xi")));
}

TEST_CASE("speed-ghost formulation has an abelian ghost") {
  TheoryDef t = build_theory("jacobi_rewritten", 2);
  CHECK(expr_equal(t.density, pe(t,
      "2^(1/2)*E^(1/2)*m^(1/2)*r - q1'*r^(-1)*zeta*q1_a - q2'*r^(-1)*zeta*q2_a")));
  CHECK(expr_equal(q_of(t, "q1"), pe(t, "q1'*r^(-1)*zeta")));
  CHECK(q_of(t, "zeta").is_zero());
  CHECK(expr_equal(q_of(t, "zeta_a"), pe(t, "q1'*r^(-1)*q1_a + q2'*r^(-1)*q2_a")));
  for (const NilpotencyEntry& e : check_q_nilpotency(t)) CHECK(e.cls == ResidueClass::zero);
  InvarianceResult inv = check_action_invariance(t);
  CHECK(inv.invariant);
  CHECK(expr_equal(inv.potential, pe(t, "2^(1/2)*E^(1/2)*m^(1/2)*zeta")));
}

// ---------------------------------------------------------------------------
// einbein (1d gravity) formulation
// ---------------------------------------------------------------------------

TEST_CASE("einbein action density and brst") {
  TheoryDef t = build_theory("gravity", 2);
  CHECK(expr_equal(t.density, pe(t,
      "E*g^(1/2) + 1/2*m*g^(-1/2)*q1'^2 + 1/2*m*g^(-1/2)*q2'^2 - V*g^(1/2)"
      " - q1'*xi*q1_a - q2'*xi*q2_a - 2*g*xi'*g_a - g'*xi*g_a - xi*xi'*xi_a")));
  CHECK(expr_equal(q_of(t, "q1"), pe(t, "q1'*xi")));
  CHECK(expr_equal(q_of(t, "g"), pe(t, "2*g*xi' + g'*xi")));
  CHECK(expr_equal(q_of(t, "xi"), pe(t, "xi*xi'")));
  for (const NilpotencyEntry& e : check_q_nilpotency(t)) CHECK(e.cls == ResidueClass::zero);
  InvarianceResult inv = check_action_invariance(t);
  CHECK(inv.invariant);
  CHECK(expr_equal(inv.potential, pe(t, "2*E*g^(1/2)*xi - 2*V*g^(1/2)*xi")));
}

TEST_CASE("abelianized einbein theory") {
  TheoryDef t = build_theory("gravity_abelianized", 2);
  CHECK(q_of(t, "c").is_zero());
  CHECK(expr_equal(q_of(t, "g"), pe(t, "2*c'*g^(1/2)")));
  for (const NilpotencyEntry& e : check_q_nilpotency(t)) CHECK(e.cls == ResidueClass::zero);
  InvarianceResult inv = check_action_invariance(t);
  CHECK(inv.invariant);
  CHECK(expr_equal(inv.potential, pe(t, "2*E*c - 2*V*c")));
}

// ---------------------------------------------------------------------------
// extended and generalized energy roles
// ---------------------------------------------------------------------------

TEST_CASE("extended theories square to a boundary term on the energy antifield") {
  TheoryDef jac = build_theory("jacobi_extended", 2);
  CHECK(expr_equal(q_of(jac, "E_a"), pe(jac, "1/2*2^(1/2)*E^(-1/2)*m^(1/2)*r - 1")));
  auto entries = check_q_nilpotency(jac);
  for (const NilpotencyEntry& e : entries) {
    if (e.gen == jac.algebra().require("E_a")) continue;
    CHECK(e.cls == ResidueClass::zero);
  }
  const NilpotencyEntry& ea = entry_for(entries, jac, "E_a");
  CHECK(ea.cls == ResidueClass::zero_on_boundary);
  CHECK(expr_equal(ea.potential, pe(jac, "1/2*2^(1/2)*E^(-1/2)*m^(1/2)*r*xi")));

  TheoryDef grav = build_theory("gravity_extended", 2);
  CHECK(expr_equal(q_of(grav, "E_a"), pe(grav, "g^(1/2) - 1")));
  entries = check_q_nilpotency(grav);
  const NilpotencyEntry& ga = entry_for(entries, grav, "E_a");
  CHECK(ga.cls == ResidueClass::zero_on_boundary);
  CHECK(expr_equal(ga.potential, pe(grav, "g^(1/2)*xi")));
}

TEST_CASE("an energy profile leaves no gauge symmetry") {
  for (const char* name : {"jacobi_generalized", "gravity_generalized"}) {
    TheoryDef t = build_theory(name, 2);
    CHECK(q_of(t, "q1").is_zero());
    for (const NilpotencyEntry& e : check_q_nilpotency(t)) CHECK(e.cls == ResidueClass::zero);
    InvarianceResult inv = check_action_invariance(t);
    CHECK(inv.invariant);
    CHECK(inv.potential.is_zero());
  }
}

// ---------------------------------------------------------------------------
// master equation with boundary one-form, against goldens
// ---------------------------------------------------------------------------

TEST_CASE("variation splits into euler part plus the recorded one-form") {
  for (const std::string& name : theory_names()) {
    CAPTURE(name);
    TheoryDef t = build_theory(name, 2);
    BvBfvResult r = check_bvbfv_equation(t);
    CHECK(r.holds);
    GoldenResult density = golden_compare(name + "_density", t.density);
    CHECK(density.matched);
    GoldenResult alpha = golden_compare(name + "_alpha", r.alpha);
    CHECK(alpha.matched);
  }
}

TEST_CASE("einbein boundary one-form") {
  TheoryDef t = build_theory("gravity", 2);
  BvBfvResult r = check_bvbfv_equation(t);
  CHECK(r.holds);
  CHECK(expr_equal(r.alpha, pe(t,
      "m*g^(-1/2)*q1'*dq1 + m*g^(-1/2)*q2'*dq2 - xi*q1_a*dq1 - xi*q2_a*dq2"
      " - xi*g_a*dg + xi*xi_a*dxi - 2*g*g_a*dxi")));
}

TEST_CASE("abelianized boundary one-form exposes b = -2 g+ sqrt(g)") {
  TheoryDef t = build_theory("gravity_abelianized", 2);
  BvBfvResult r = check_bvbfv_equation(t);
  GenId c = t.algebra().require("c");
  bool seen = false;
  for (auto& [gen, coeff] : one_form_coefficients(r.alpha)) {
    if (gen != c) continue;
    seen = true;
    CHECK(expr_equal(coeff, pe(t, "-2*g^(1/2)*g_a")));
  }
  CHECK(seen);
}

// ---------------------------------------------------------------------------
// symplectomorphisms between formulations
// ---------------------------------------------------------------------------

TEST_CASE("abelianization matches exactly and round-trips") {
  TheoryDef grav = build_theory("gravity", 2);
  TheoryDef ab = build_theory("gravity_abelianized", 2);
  TransformationDef tr = abelianizing_transformation(grav, ab);
  TransformResult res = apply_field_transformation(grav, tr, ab);
  CHECK(res.equal);
  CHECK(res.exact);
  CHECK(transformation_round_trip(tr));
}

TEST_CASE("speed-ghost substitution matches and round-trips") {
  TheoryDef jac = build_theory("jacobi", 2);
  TheoryDef rew = build_theory("jacobi_rewritten", 2);
  TransformationDef tr = speed_ghost_transformation(jac, rew);
  TransformResult res = apply_field_transformation(jac, tr, rew);
  CHECK(res.equal);
  CHECK(transformation_round_trip(tr));
}

TEST_CASE("identity transformation is exact with zero residue") {
  TheoryDef a = build_theory("jacobi", 2);
  TheoryDef b = build_theory("jacobi", 2);
  TransformationDef tr;
  tr.name = "identity";
  tr.from = a.alg.get();
  tr.to = b.alg.get();
  TransformResult res = apply_field_transformation(a, tr, b);
  CHECK(res.equal);
  CHECK(res.exact);
  CHECK(res.residue.is_zero());
  CHECK(transformation_round_trip(tr));
}
