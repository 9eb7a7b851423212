#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "worldline/aksz.hpp"
#include "worldline/golden.hpp"
#include "worldline/parse.hpp"

using namespace worldline;

namespace {

GradedExpr pe(const Algebra& alg, const std::string& text) { return parse_expr(alg, text); }

GradedExpr q_of(const TheoryDef& t, const std::string& gen) {
  return apply(t.brst, t.algebra().gen(gen));
}

void check_nilpotent(const TheoryDef& t) {
  for (const NilpotencyEntry& e : check_q_nilpotency(t)) {
    CAPTURE(t.algebra().info(e.gen).name);
    CHECK(e.cls == ResidueClass::zero);
  }
}

std::string render_rows(const TargetData& t) {
  std::ostringstream os;
  for (const SuperfieldRow& row : superfield_rows(t))
    os << row.target << " = " << (row.zero_sign < 0 ? "-" : "+") << row.zero << " "
       << (row.one_sign < 0 ? "-" : "+") << row.one << "*dt\n";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// first-order einbein target
// ---------------------------------------------------------------------------

TEST_CASE("einbein target transgresses to the first-order component action") {
  AkszTheory t = build_aksz_action(gravity_target(2));
  const Algebra& alg = t.def.algebra();
  CHECK(expr_equal(t.def.density, pe(alg,
      "Vq1*c*p1_a + Vq2*c*p2_a + E*e - V*e - c'*e_a + p1*q1' + p2*q2'"
      " - m^(-1)*c*p1*q1_a - m^(-1)*c*p2*q2_a - 1/2*m^(-1)*e*p1^2 - 1/2*m^(-1)*e*p2^2")));
  // the einbein component eats the ghost derivative; its antifield carries
  // the hamiltonian constraint
  CHECK(expr_equal(q_of(t.def, "e"), pe(alg, "c'")));
  CHECK(expr_equal(q_of(t.def, "e_a"),
                   pe(alg, "E - V - 1/2*m^(-1)*p1^2 - 1/2*m^(-1)*p2^2")));
  CHECK(expr_equal(q_of(t.def, "q1"), pe(alg, "m^(-1)*c*p1")));
  CHECK(expr_equal(q_of(t.def, "p1"), pe(alg, "-Vq1*c")));
  CHECK(q_of(t.def, "c").is_zero());
  CHECK(expr_equal(q_of(t.def, "c_a"),
                   pe(alg, "-Vq1*p1_a - Vq2*p2_a - e_a' + m^(-1)*p1*q1_a + m^(-1)*p2*q2_a")));
  check_nilpotent(t.def);
}

TEST_CASE("superfield component rows are part of the contract") {
  GoldenResult grav = golden_compare_text("aksz_gravity_rows", render_rows(gravity_target(2)));
  CHECK(grav.matched);
  GoldenResult spin = golden_compare_text("spinning_flat_rows", render_rows(spinning_flat_target()));
  CHECK(spin.matched);
}

TEST_CASE("free target transgresses to the kinetic action alone") {
  TargetData t = free_target(2);
  CHECK(t.sigma.is_zero());
  CHECK(expr_equal(t.alpha, pe(t.algebra(), "b*dc + p1*dq1 + p2*dq2")));
  AkszTheory a = build_aksz_action(std::move(t));
  CHECK(expr_equal(a.def.density, pe(a.def.algebra(), "-c'*e_a + p1*q1' + p2*q2'")));
  check_nilpotent(a.def);
}

TEST_CASE("only one-dimensional sources are accepted") {
  TargetData t = free_target(2);
  t.source_dim = 2;
  CHECK_THROWS_AS(build_aksz_action(std::move(t)), AlgebraError);
}

// ---------------------------------------------------------------------------
// momentum elimination
// ---------------------------------------------------------------------------

TEST_CASE("eliminating momenta recovers the second-order einbein action") {
  TheoryDef s = eliminate_momenta(build_aksz_action(gravity_target(2)));
  CHECK(expr_equal(s.density, pe(s.algebra(),
      "E*e + 1/2*m*e^(-1)*q1'^2 + 1/2*m*e^(-1)*q2'^2 - V*e"
      " - c*e^(-1)*q1'*q1_a - c*e^(-1)*q2'*q2_a - c'*e_a")));
  check_nilpotent(s);
  CHECK(check_bvbfv_equation(s).holds);
}

TEST_CASE("second-order form squares the einbein into the worldline metric") {
  TheoryDef ab = build_theory("gravity_abelianized", 2);
  TheoryDef el = eliminate_momenta(build_aksz_action(gravity_target(2)));
  const Algebra& A = ab.algebra();
  const Algebra& B = el.algebra();
  TransformationDef tr;
  tr.name = "einbein_square";
  tr.from = &A;
  tr.to = &B;
  tr.bindings.emplace(A.require("g"), pe(B, "e^2"));
  tr.bindings.emplace(A.require("g_a"), pe(B, "1/2*e^(-1)*e_a"));
  tr.inverse_bindings.emplace(B.require("e"), pe(A, "g^(1/2)"));
  tr.inverse_bindings.emplace(B.require("e_a"), pe(A, "2*g^(1/2)*g_a"));
  TransformResult res = apply_field_transformation(ab, tr, el);
  CHECK(res.equal);
  CHECK(res.exact);
  CHECK(transformation_round_trip(tr));
}

TEST_CASE("gauge coupling survives elimination without an einbein factor") {
  TheoryDef s = eliminate_momenta(build_aksz_action(general_weight_target(2)));
  CHECK(expr_equal(s.density, pe(s.algebra(),
      "A1*q1' + A2*q2' - V*e - c*e^(-1)*q1'*q1_a - c*e^(-1)*q2'*q2_a - c'*e_a"
      " + 1/2*G1^(-1)*e^(-1)*q1'^2 + 1/2*G2^(-1)*e^(-1)*q2'^2")));
  check_nilpotent(s);
  CHECK(check_bvbfv_equation(s).holds);
}

TEST_CASE("minisuperspace reduces to the cosmological action") {
  TheoryDef s = eliminate_momenta(build_aksz_action(minisuperspace_target()));
  CHECK(expr_equal(s.density, pe(s.algebra(),
      "-1/2*Lambda*a^3*e - 1/2*a*a'^2*e^(-1) + 1/2*a*chi'^2*e^(-1) + 1/2*a*e"
      " - a'*c*e^(-1)*a_a - c*chi'*e^(-1)*chi_a - c'*e_a - 1/2*a^(-1)*chi^2*e")));
  check_nilpotent(s);
  AkszTheory m = build_aksz_action(minisuperspace_target());
  CHECK(expr_equal(q_of(m.def, "e_a"), pe(m.def.algebra(),
      "-1/2*Lambda*a^3 + 1/2*a - 1/2*a^(-1)*chi^2 + 1/2*a^(-1)*pa^2 - 1/2*a^(-1)*pchi^2")));
}

// ---------------------------------------------------------------------------
// spinning (odd) sector
// ---------------------------------------------------------------------------

TEST_CASE("spinning constraint algebra closes") {
  TargetData t = spinning_flat_target();
  const Algebra& alg = t.algebra();
  const PhaseSpace& ph = *t.phase;
  CHECK(expr_equal(t.phi, pe(alg, "-1/2*B*q1*th2 + 1/2*B*q2*th1 + p1*th1 + p2*th2 + p3*th3")));
  // f = 1/2 {phi, phi} is the magnetic hamiltonian with the spin coupling
  GradedExpr f = ph.bracket(t.phi, t.phi).scaled(Coeff(1, 2));
  CHECK(expr_equal(f, pe(alg,
      "1/8*B^2*q1^2 + 1/8*B^2*q2^2 + 1/2*B*p1*q2 - 1/2*B*p2*q1 - B*th1*th2"
      " + 1/2*p1^2 + 1/2*p2^2 + 1/2*p3^2")));
  CHECK(ph.bracket(f, t.phi).is_zero());
  CHECK(ph.bracket(t.sigma, t.sigma).is_zero());
}

TEST_CASE("spinning worldline action is nilpotent with the magnetic field on") {
  AkszTheory t = build_aksz_action(spinning_flat_target());
  const Algebra& alg = t.def.algebra();
  CHECK(expr_equal(q_of(t.def, "e_a"), pe(alg,
      "-1/8*B^2*q1^2 - 1/8*B^2*q2^2 - 1/2*B*p1*q2 + 1/2*B*p2*q1 + B*th1*th2"
      " - 1/2*p1^2 - 1/2*p2^2 - 1/2*p3^2")));
  CHECK(expr_equal(q_of(t.def, "th3"), pe(alg, "gamma*p3")));
  CHECK(expr_equal(q_of(t.def, "c"), pe(alg, "-gamma^2")));
  CHECK(expr_equal(q_of(t.def, "e"), pe(alg, "c' - 2*gamma*nu")));
  CHECK(expr_equal(q_of(t.def, "nu"), pe(alg, "-gamma'")));
  check_nilpotent(t.def);
}

// ---------------------------------------------------------------------------
// bracket properties
// ---------------------------------------------------------------------------

TEST_CASE("phase-space bracket is graded under the even pairing") {
  TargetData t = spinning_flat_target();
  const Algebra& alg = t.algebra();
  const PhaseSpace& ph = *t.phase;
  // even bracket: {a,b} = -(-1)^{|a||b|} {b,a}; sigma is odd so {sigma,sigma}
  // is a real condition rather than an identity
  GradedExpr a = pe(alg, "p1*th1 + B*q2*th3");
  GradedExpr b = pe(alg, "q1*p2 + th1*th2");
  GradedExpr cc = pe(alg, "gamma*p3 + b*c*gamma");
  CHECK(expr_equal(ph.bracket(a, b), ph.bracket(b, a)));          // odd, even
  CHECK(expr_equal(ph.bracket(b, cc), -ph.bracket(cc, b)));       // even, even
  // graded Leibniz in the second slot
  CHECK(expr_equal(ph.bracket(b, a * cc), ph.bracket(b, a) * cc + a * ph.bracket(b, cc)));
  // graded Jacobi on a mixed triple
  GradedExpr jac = ph.bracket(a, ph.bracket(b, cc)) - ph.bracket(ph.bracket(a, b), cc) -
                   ph.bracket(b, ph.bracket(a, cc));
  CHECK(jac.is_zero());
}

TEST_CASE("degenerate pairings are rejected") {
  TargetData base = target_skeleton("degenerate", 1, false);
  finish_quadratic_target(base);
  std::vector<std::vector<Rat>> singular{{Rat(0)}};
  CHECK_THROWS_AS(build_super_target(std::move(base), singular), AlgebraError);
}
