#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "worldline/bracket.hpp"
#include "worldline/parse.hpp"

using namespace worldline;

namespace {

struct Particle {
  Algebra alg;
  Particle() {
    alg.constant("m", true);
    alg.field("q1");
    alg.field("q2");
    alg.field("xi", Parity::odd, 1);
    alg.create_dsymbols();
  }
};

}  // namespace

TEST_CASE("time derivative follows the towers") {
  Particle fx;
  Algebra& alg = fx.alg;
  CHECK(to_string(time_derivative(parse_expr(alg, "q1^2"))) == "2*q1*q1'");
  CHECK(expr_equal(time_derivative(parse_expr(alg, "q1*q1'")),
                   parse_expr(alg, "q1'^2 + q1*q1''")));
  // graded Leibniz: d/dt(xi*q1) = xi'*q1 + xi*q1'
  CHECK(expr_equal(time_derivative(parse_expr(alg, "xi*q1")),
                   parse_expr(alg, "xi'*q1 + xi*q1'")));
}

TEST_CASE("left partials carry the crossing sign") {
  Particle fx;
  Algebra& alg = fx.alg;
  GenId xi = alg.require("xi");
  GenId xidot = alg.require("xi'");
  // d/d(xi') acting on xi*xi' crosses xi once
  CHECK(to_string(partial(parse_expr(alg, "xi*xi'"), xidot)) == "-xi");
  CHECK(to_string(partial(parse_expr(alg, "xi*xi'"), xi)) == "xi'");
  CHECK(to_string(partial(parse_expr(alg, "q1^3"), alg.require("q1"))) == "3*q1^2");
}

TEST_CASE("dependent scalars chain through partials") {
  Algebra alg;
  alg.constant("m", true);
  alg.field("q1");
  alg.field("q2");
  GenId r = alg.dependent("r", true);
  // r = |q'|: dr/dq_i' = q_i'/r, plus the contraction rules that close it
  alg.set_partial(r, alg.require("q1'"), parse_expr(alg, "q1'/r"));
  alg.set_partial(r, alg.require("q2'"), parse_expr(alg, "q2'/r"));
  alg.finalize_dependent(r);
  alg.add_relation("r_sq", parse_expr(alg, "q1'^2 + q2'^2"), parse_expr(alg, "r^2"));
  alg.add_relation("r_rdot", parse_expr(alg, "q1'*q1'' + q2'*q2''"), parse_expr(alg, "r*r'"));

  // d/dt r = (q'.q'')/r = r'
  CHECK(expr_equal(time_derivative(parse_expr(alg, "r")), parse_expr(alg, "r'")));
  // chain partial of r^2 with respect to q1' is 2*q1'
  GradedExpr r2 = parse_expr(alg, "r^2");
  CHECK(expr_equal(chain_partial(r2, alg.require("q1'")), parse_expr(alg, "2*q1'")));
  // the contraction rules recognize the squared speed
  CHECK(to_string(parse_expr(alg, "q1'^2 + q2'^2")) == "r^2");
}

TEST_CASE("euler operator against the variational split") {
  Particle fx;
  Algebra& alg = fx.alg;
  // L = m/2 (q1'^2 + q2'^2) - q1^2 q2
  GradedExpr L = parse_expr(alg, "m*q1'^2/2 + m*q2'^2/2 - q1^2*q2");
  GenId q1 = alg.require("q1");
  GenId q2 = alg.require("q2");

  GradedExpr e1 = euler_derivative(L, q1);
  CHECK(expr_equal(e1, parse_expr(alg, "-m*q1'' - 2*q1*q2")));
  GradedExpr e2 = euler_derivative(L, q2);
  CHECK(expr_equal(e2, parse_expr(alg, "-m*q2'' - q1^2")));

  // independent reduction: delta L = d/dt(boundary) + sum d(phi)*euler
  VariationalSplit vs = variational_split(L);
  bool saw1 = false, saw2 = false;
  for (const auto& [g, v] : vs.euler) {
    if (g == q1) {
      CHECK(expr_equal(v, e1));
      saw1 = true;
    }
    if (g == q2) {
      CHECK(expr_equal(v, e2));
      saw2 = true;
    }
  }
  CHECK(saw1);
  CHECK(saw2);
  // boundary term is m*(dq1*q1' + dq2*q2')
  CHECK(expr_equal(vs.boundary, parse_expr(alg, "m*dq1*q1' + m*dq2*q2'")));
  // and the split reassembles the full variation
  GradedExpr delta = field_variation(L);
  GradedExpr rebuilt = time_derivative(vs.boundary);
  for (const auto& [g, v] : vs.euler) rebuilt += alg.gen(alg.dsym(g)) * v;
  CHECK(expr_equal(delta, rebuilt));
}

TEST_CASE("greedy reduction finds total derivatives") {
  Particle fx;
  Algebra& alg = fx.alg;
  for (const char* src : {"q1*q2", "q1*q1'*q2'", "xi*q1'", "xi*xi'*q1"}) {
    GradedExpr p = parse_expr(alg, src);
    IbpResult r = ibp_reduce(time_derivative(p));
    CHECK(r.exact);
    CHECK(expr_equal(time_derivative(r.potential), time_derivative(p)));
  }
  // not exact: residue comes back nonzero
  IbpResult r = ibp_reduce(parse_expr(alg, "q1'*q2'"));
  CHECK_FALSE(r.exact);
  CHECK_FALSE(r.residue.is_zero());
}

TEST_CASE("interior products prolong along jets of d-symbols") {
  Particle fx;
  Algebra& alg = fx.alg;
  // vector field Q: q1 -> xi*q1', xi -> xi*xi'
  std::map<GenId, GradedExpr> comps;
  comps.emplace(alg.require("q1"), parse_expr(alg, "xi*q1'"));
  comps.emplace(alg.require("xi"), parse_expr(alg, "xi*xi'"));
  Derivation iq = interior_product(alg, 1, comps);

  GradedExpr dq1dot = alg.gen(alg.dsym(alg.require("q1'")));
  CHECK(expr_equal(apply(iq, dq1dot), parse_expr(alg, "xi'*q1' + xi*q1''")));
  GradedExpr dxidot = alg.gen(alg.dsym(alg.require("xi'")));
  CHECK(expr_equal(apply(iq, dxidot), parse_expr(alg, "xi*xi''")));

  // i_Q preserves total parity here (odd field, odd symbol), so plain Leibniz
  GradedExpr dq1 = alg.gen(alg.dsym(alg.require("q1")));
  GradedExpr two_form = dq1dot * dq1;
  GradedExpr expect = apply(iq, dq1dot) * dq1 + dq1dot * apply(iq, dq1);
  CHECK(expr_equal(apply(iq, two_form), expect));

  // ghost Euler field picks up jets with the same weight
  Derivation ie = ghost_euler_interior(alg);
  CHECK(expr_equal(apply(ie, dxidot), parse_expr(alg, "xi'")));
}

TEST_CASE("hamiltonian brackets from the symplectic form") {
  Algebra alg;
  alg.constant("m", true);
  alg.field("q", Parity::even, 0, false, 2);
  alg.field("p", Parity::even, 0, false, 2);
  alg.field("c", Parity::odd, 1, false, 2);
  alg.field("b", Parity::odd, -1, false, 2);
  alg.create_dsymbols();
  PhaseSpace ps(alg, {
                         {alg.require("p"), alg.require("q"), alg.num(Coeff(1))},
                         {alg.require("b"), alg.require("c"), alg.num(Coeff(1))},
                     });
  GradedExpr q = alg.gen("q"), p = alg.gen("p"), b = alg.gen("b"), c = alg.gen("c");

  CHECK(to_string(ps.bracket(q, p)) == "1");
  CHECK(to_string(ps.bracket(p, q)) == "-1");
  CHECK(to_string(ps.bracket(c, b)) == "1");
  CHECK(to_string(ps.bracket(b, c)) == "1");  // graded symmetry for odd/odd
  CHECK(ps.bracket(q, c).is_zero());

  // Leibniz in the second slot: {p, q^2} = -2q
  CHECK(expr_equal(ps.bracket(p, q * q), parse_expr(alg, "-2*q")));
  // Jacobi on a sample triple: {q,{p,pc}} - {p,{q,pc}} = {{q,p},pc}
  GradedExpr f = p * c;
  GradedExpr lhs = ps.bracket(q, ps.bracket(p, f)) - ps.bracket(p, ps.bracket(q, f));
  GradedExpr rhs = ps.bracket(ps.bracket(q, p), f);
  CHECK(expr_equal(lhs, rhs));
}
