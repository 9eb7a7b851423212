#include "worldline/theory.hpp"

#include <sstream>

#include "worldline/aksz.hpp"
#include "worldline/parse.hpp"

namespace worldline {

namespace {

std::string num_name(const char* stem, int i) { return stem + std::to_string(i); }

// ---------------------------------------------------------------------------
// shared generator kits
// ---------------------------------------------------------------------------

// ||q'|| as a dependent scalar
GenId speed_scalar(Algebra& alg, const std::vector<GenId>& qs) {
  GenId r = alg.dependent("r", /*positive=*/true, /*tower=*/4);
  for (GenId q : qs) {
    GenId qd = alg.jet(q, 1);
    alg.set_partial(r, qd, alg.gen(qd) * alg.gen_pow(r, Rat(-1)));
  }
  alg.finalize_dependent(r);
  return r;
}

// contraction rules: sum q'q' = r^2 and its first two time derivatives
void speed_relations(Algebra& alg, const std::vector<GenId>& qs, GenId r) {
  GradedExpr s1 = alg.zero(), s2 = alg.zero(), s3 = alg.zero();
  for (GenId q : qs) {
    GradedExpr q1 = alg.gen(alg.jet(q, 1));
    GradedExpr q2 = alg.gen(alg.jet(q, 2));
    GradedExpr q3 = alg.gen(alg.jet(q, 3));
    s1 += q1 * q1;
    s2 += q1 * q2;
    s3 += q2 * q2 + q1 * q3;
  }
  GradedExpr r0 = alg.gen(r), r1 = alg.gen(alg.jet(r, 1)), r2 = alg.gen(alg.jet(r, 2));
  alg.add_relation("speed_sq", s1, r0 * r0);
  alg.add_relation("speed_rate", s2, r0 * r1);
  alg.add_relation("speed_rate2", s3, r1 * r1 + r0 * r2);
  // overlap of the two rules above: q_i'' sum(q_k'^2) - q_i' sum(q_k' q_k'')
  // contracts to q_i'' r^2 - q_i' r r' even when no full sum is present
  for (std::size_t i = 0; i < qs.size(); ++i) {
    GradedExpr di1 = alg.gen(alg.jet(qs[i], 1));
    GradedExpr di2 = alg.gen(alg.jet(qs[i], 2));
    GradedExpr lhs = di1 * r0 * r1;
    for (std::size_t k = 0; k < qs.size(); ++k) {
      if (k == i) continue;
      GradedExpr dk1 = alg.gen(alg.jet(qs[k], 1));
      GradedExpr dk2 = alg.gen(alg.jet(qs[k], 2));
      lhs += di2 * dk1 * dk1 - di1 * dk1 * dk2;
    }
    alg.add_relation("speed_pair_" + alg.info(qs[i]).name, lhs, di2 * r0 * r0);
  }
}

GradedExpr kinetic_t(const Algebra& alg, const std::vector<GenId>& qs) {
  GradedExpr t = alg.zero();
  for (GenId q : qs) {
    GradedExpr qd = alg.gen(alg.jet(q, 1));
    t += qd * qd;
  }
  return (alg.gen("m") * t).scaled(Coeff(1, 2));
}

// ---------------------------------------------------------------------------
// Jacobi family
// ---------------------------------------------------------------------------

TheoryDef jacobi_family(const std::string& name, int dim, EnergyMode mode, bool rewritten) {
  TheoryDef t;
  t.name = name;
  t.dim = dim;
  t.energy = mode;
  t.alg = std::make_unique<Algebra>();
  Algebra& alg = *t.alg;

  alg.constant("m", true);
  GenId en = mode == EnergyMode::profile ? alg.field("E", Parity::even, 0, /*positive=*/true)
                                         : alg.constant("E", true);
  std::vector<GenId> qs;
  for (int i = 1; i <= dim; ++i) qs.push_back(alg.field(num_name("q", i)));
  GenId gh = mode == EnergyMode::profile ? kNoGen : alg.ghost_field(rewritten ? "zeta" : "xi");

  std::vector<GenId> qas;
  for (GenId q : qs) qas.push_back(alg.antifield(q));
  GenId gha = gh == kNoGen ? kNoGen : alg.antifield(gh);
  GenId ena = kNoGen;
  if (mode == EnergyMode::variable) ena = alg.antifield(en, /*tower=*/0);
  if (mode == EnergyMode::profile) ena = alg.antifield(en);

  GenId r = speed_scalar(alg, qs);
  alg.create_dsymbols();
  speed_relations(alg, qs, r);

  // 2 sqrt(E T) = sqrt(2mE) ||q'||
  GradedExpr dens = parse_expr(alg, "2^(1/2)*m^(1/2)*E^(1/2)") * alg.gen(r);
  if (mode != EnergyMode::fixed) dens -= alg.gen(en);
  if (gh != kNoGen) {
    for (std::size_t i = 0; i < qs.size(); ++i) {
      GradedExpr vel = alg.gen(alg.jet(qs[i], 1));
      if (rewritten) vel = vel * alg.gen_pow(r, Rat(-1));  // u^i = q'^i / ||q'||
      dens += alg.gen(qas[i]) * alg.gen(gh) * vel;
    }
    if (!rewritten) dens -= alg.gen(gha) * alg.gen(gh) * alg.gen(alg.jet(gh, 1));
  }
  t.density = dens;

  for (std::size_t i = 0; i < qs.size(); ++i) t.pairs.push_back({qs[i], qas[i]});
  if (gh != kNoGen) t.pairs.push_back({gh, gha});
  if (ena != kNoGen) t.pairs.push_back({en, ena});
  // the dynamical-energy variant only closes with the ghost pinned at the ends
  if (gh != kNoGen && mode == EnergyMode::variable) t.vanish_at_endpoints.push_back(gh);
  t.brst = brst_from_action(alg, t.density, t.pairs);
  return t;
}

// ---------------------------------------------------------------------------
// gravity family
// ---------------------------------------------------------------------------

TheoryDef gravity_family(const std::string& name, int dim, EnergyMode mode, bool abelian) {
  TheoryDef t;
  t.name = name;
  t.dim = dim;
  t.energy = mode;
  t.alg = std::make_unique<Algebra>();
  Algebra& alg = *t.alg;

  alg.constant("m", true);
  GenId en = mode == EnergyMode::profile ? alg.field("E", Parity::even, 0, /*positive=*/true)
                                         : alg.constant("E", true);
  std::vector<GenId> qs;
  for (int i = 1; i <= dim; ++i) qs.push_back(alg.field(num_name("q", i)));
  GenId g = alg.field("g", Parity::even, 0, /*positive=*/true);
  GenId gh = mode == EnergyMode::profile ? kNoGen : alg.ghost_field(abelian ? "c" : "xi");

  std::vector<GenId> qas;
  for (GenId q : qs) qas.push_back(alg.antifield(q));
  GenId ga = alg.antifield(g);
  GenId gha = gh == kNoGen ? kNoGen : alg.antifield(gh);
  GenId ena = kNoGen;
  if (mode == EnergyMode::variable) ena = alg.antifield(en, /*tower=*/0);
  if (mode == EnergyMode::profile) ena = alg.antifield(en);

  GenId v = abstract_scalar(alg, "V", qs);
  alg.create_dsymbols();

  GradedExpr sqg = alg.gen_pow(g, Rat(1, 2));
  GradedExpr dens = alg.gen_pow(g, Rat(-1, 2)) * kinetic_t(alg, qs) - sqg * alg.gen(v) + sqg * alg.gen(en);
  if (mode != EnergyMode::fixed) dens -= alg.gen(en);
  if (gh != kNoGen && !abelian) {
    for (std::size_t i = 0; i < qs.size(); ++i)
      dens += alg.gen(qas[i]) * alg.gen(gh) * alg.gen(alg.jet(qs[i], 1));
    dens += alg.gen(ga) * (alg.gen(gh) * alg.gen(alg.jet(g, 1)) +
                           (alg.gen(g) * alg.gen(alg.jet(gh, 1))).scaled(Coeff(2)));
    dens -= alg.gen(gha) * alg.gen(gh) * alg.gen(alg.jet(gh, 1));
  }
  if (gh != kNoGen && abelian) {
    for (std::size_t i = 0; i < qs.size(); ++i)
      dens += alg.gen(qas[i]) * alg.gen(gh) * alg.gen(alg.jet(qs[i], 1)) * alg.gen_pow(g, Rat(-1, 2));
    dens += (alg.gen(ga) * sqg * alg.gen(alg.jet(gh, 1))).scaled(Coeff(2));
  }
  t.density = dens;

  for (std::size_t i = 0; i < qs.size(); ++i) t.pairs.push_back({qs[i], qas[i]});
  t.pairs.push_back({g, ga});
  if (gh != kNoGen) t.pairs.push_back({gh, gha});
  if (ena != kNoGen) t.pairs.push_back({en, ena});
  if (gh != kNoGen && mode == EnergyMode::variable) t.vanish_at_endpoints.push_back(gh);
  t.brst = brst_from_action(alg, t.density, t.pairs);
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// abstract scalars on configuration space
// ---------------------------------------------------------------------------

GenId abstract_scalar(Algebra& alg, const std::string& base, const std::vector<GenId>& qs) {
  const int n = static_cast<int>(qs.size());
  GenId s = alg.dependent(base, /*positive=*/false, /*tower=*/4);
  std::vector<GenId> d1(n);
  for (int i = 0; i < n; ++i)
    d1[i] = alg.dependent(base + alg.info(qs[i]).name, /*positive=*/false, /*tower=*/4);
  // second level is symmetric and terminal: the family is cut off after two
  // derivatives, which is as deep as Q^2 reaches
  std::vector<std::vector<GenId>> d2(n, std::vector<GenId>(n, kNoGen));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      GenId gij = alg.dependent(base + alg.info(qs[i]).name + alg.info(qs[j]).name,
                                /*positive=*/false, /*tower=*/4);
      d2[i][j] = d2[j][i] = gij;
    }
  for (int i = 0; i < n; ++i) alg.set_partial(s, qs[i], alg.gen(d1[i]));
  alg.finalize_dependent(s);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) alg.set_partial(d1[i], qs[j], alg.gen(d2[i][j]));
    alg.finalize_dependent(d1[i]);
  }
  // chain rules as rewrite rules, so that d/dt closes on the family
  GradedExpr c1 = alg.zero(), c2 = alg.zero();
  for (int i = 0; i < n; ++i) {
    GradedExpr qd = alg.gen(alg.jet(qs[i], 1));
    c1 += alg.gen(d1[i]) * qd;
    c2 += alg.gen(alg.jet(d1[i], 1)) * qd + alg.gen(d1[i]) * alg.gen(alg.jet(qs[i], 2));
  }
  alg.add_relation(base + "_chain", c1, alg.gen(alg.jet(s, 1)));
  alg.add_relation(base + "_chain2", c2, alg.gen(alg.jet(s, 2)));
  for (int i = 0; i < n; ++i) {
    GradedExpr ci = alg.zero();
    for (int j = 0; j < n; ++j) ci += alg.gen(d2[i][j]) * alg.gen(alg.jet(qs[j], 1));
    alg.add_relation(base + "_chain_" + alg.info(d1[i]).name, ci, alg.gen(alg.jet(d1[i], 1)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

const std::vector<std::string>& theory_names() {
  static const std::vector<std::string> names = {
      "jacobi",          "jacobi_extended",  "jacobi_generalized",
      "jacobi_rewritten", "gravity",         "gravity_extended",
      "gravity_generalized", "gravity_abelianized", "aksz_gravity_first_order",
      "aksz_general_f",  "minisuperspace",   "spinning_flat"};
  return names;
}

TheoryDef build_theory(const std::string& name, int dim) {
  if (dim < 1) throw AlgebraError("build_theory: dim must be at least 1");
  if (name == "jacobi") return jacobi_family(name, dim, EnergyMode::fixed, false);
  if (name == "jacobi_extended") return jacobi_family(name, dim, EnergyMode::variable, false);
  if (name == "jacobi_generalized") return jacobi_family(name, dim, EnergyMode::profile, false);
  if (name == "jacobi_rewritten") return jacobi_family(name, dim, EnergyMode::fixed, true);
  if (name == "gravity") return gravity_family(name, dim, EnergyMode::fixed, false);
  if (name == "gravity_extended") return gravity_family(name, dim, EnergyMode::variable, false);
  if (name == "gravity_generalized") return gravity_family(name, dim, EnergyMode::profile, false);
  if (name == "gravity_abelianized") return gravity_family(name, dim, EnergyMode::fixed, true);
  if (name == "aksz_gravity_first_order") return std::move(build_aksz_action(gravity_target(dim)).def);
  if (name == "aksz_general_f") return std::move(build_aksz_action(general_weight_target(dim)).def);
  if (name == "minisuperspace") return std::move(build_aksz_action(minisuperspace_target()).def);
  if (name == "spinning_flat") return std::move(build_aksz_action(spinning_flat_target()).def);
  std::ostringstream os;
  os << "unknown theory '" << name << "'; catalog:";
  for (const std::string& n : theory_names()) os << ' ' << n;
  throw AlgebraError(os.str());
}

// ---------------------------------------------------------------------------
// Q from the action
// ---------------------------------------------------------------------------

Derivation brst_from_action(const Algebra& alg, const GradedExpr& density,
                            const std::vector<FieldPair>& pairs) {
  Derivation q;
  q.alg = &alg;
  q.parity = 1;
  auto sign_for = [](long gh) {
    long k = gh * (gh + 1) / 2;
    return ((k % 2) + 2) % 2 == 0;
  };
  for (const FieldPair& p : pairs) {
    GradedExpr ef = euler_derivative(density, p.field);
    GradedExpr ea = euler_derivative(density, p.antifield);
    q.set(p.antifield, sign_for(alg.info(p.field).ghost) ? ef : -ef);
    q.set(p.field, sign_for(alg.info(p.antifield).ghost) ? ea : -ea);
  }
  return q;
}

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

std::vector<NilpotencyEntry> check_q_nilpotency(const TheoryDef& t) {
  const Algebra& alg = *t.alg;
  std::map<GenId, GradedExpr> bc;
  for (GenId v : t.vanish_at_endpoints) bc.emplace(v, alg.zero());
  std::vector<NilpotencyEntry> out;
  for (const FieldPair& p : t.pairs) {
    for (GenId z : {p.field, p.antifield}) {
      NilpotencyEntry e;
      e.gen = z;
      e.square = apply(t.brst, apply(t.brst, alg.gen(z)));
      e.potential = alg.zero();
      if (e.square.is_zero()) {
        e.cls = ResidueClass::zero;
      } else {
        IbpResult r = ibp_reduce(e.square);
        if (r.exact) {
          e.potential = r.potential;
          GradedExpr at_ends = substitute(r.potential, alg, bc);
          e.cls = at_ends.is_zero() ? ResidueClass::zero_on_boundary : ResidueClass::nonzero;
        } else {
          e.cls = ResidueClass::nonzero;
        }
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

InvarianceResult check_action_invariance(const TheoryDef& t) {
  InvarianceResult out;
  GradedExpr qs = apply(t.brst, t.density);
  out.potential = t.alg->zero();
  out.residue = t.alg->zero();
  if (qs.is_zero()) {
    out.invariant = true;
    return out;
  }
  IbpResult r = ibp_reduce(qs);
  out.invariant = r.exact;
  out.potential = r.potential;
  out.residue = r.residue;
  return out;
}

BvBfvResult check_bvbfv_equation(const TheoryDef& t) {
  const Algebra& alg = *t.alg;
  BvBfvResult out;
  out.alpha = variational_split(t.density).boundary;
  // pairing density: (-1)^{gh(field)} d(antifield) d(field) per pair.  Pairs
  // whose field carries no d-symbol (a constant energy variable) have no
  // two-form block and are skipped on both sides.
  GradedExpr omega = alg.zero(), target = alg.zero();
  std::map<GenId, GradedExpr> comps;
  for (const FieldPair& p : t.pairs) {
    GenId df = alg.info(p.field).dsymbol;
    GenId da = alg.info(p.antifield).dsymbol;
    if (df == kNoGen || da == kNoGen) continue;
    GradedExpr w = alg.gen(da) * alg.gen(df);
    bool flip = ((alg.info(p.field).ghost % 2) + 2) % 2 == 1;
    omega += flip ? -w : w;
    comps.emplace(p.field, apply(t.brst, alg.gen(p.field)));
    comps.emplace(p.antifield, apply(t.brst, alg.gen(p.antifield)));
    target += alg.gen(df) * euler_derivative(t.density, p.field);
    target += alg.gen(da) * euler_derivative(t.density, p.antifield);
  }
  out.omega = omega;
  Derivation iq = interior_product(alg, 1, comps);
  out.residue = apply(iq, omega) - target;
  out.holds = out.residue.is_zero();
  return out;
}

// ---------------------------------------------------------------------------
// symplectomorphisms between formulations
// ---------------------------------------------------------------------------

TransformationDef speed_ghost_transformation(const TheoryDef& jac, const TheoryDef& rewritten) {
  TransformationDef tr;
  tr.name = "speed_ghost";
  tr.from = jac.alg.get();
  tr.to = rewritten.alg.get();
  const Algebra& a = *jac.alg;
  const Algebra& b = *rewritten.alg;
  GradedExpr rb = b.gen("r"), ra = a.gen("r");
  // zeta = ||q'|| xi and zeta_a = xi_a / ||q'||
  tr.bindings.emplace(a.require("xi"), b.gen("zeta") * expr_pow(rb, Rat(-1)));
  tr.bindings.emplace(a.require("xi_a"), rb * b.gen("zeta_a"));
  tr.inverse_bindings.emplace(b.require("zeta"), ra * a.gen("xi"));
  tr.inverse_bindings.emplace(b.require("zeta_a"), a.gen("xi_a") * expr_pow(ra, Rat(-1)));
  // the position antifields shift by a total derivative
  for (int i = 1; i <= jac.dim; ++i) {
    std::string qa = num_name("q", i) + "_a";
    GradedExpr fwd = b.gen("zeta_a") * b.gen("zeta") * b.gen(b.jet(b.require(num_name("q", i)), 1)) *
                     expr_pow(rb, Rat(-2));
    tr.bindings.emplace(a.require(qa), b.gen(qa) - time_derivative(fwd));
    GradedExpr bwd = a.gen("xi_a") * a.gen("xi") * a.gen(a.jet(a.require(num_name("q", i)), 1)) *
                     expr_pow(ra, Rat(-2));
    tr.inverse_bindings.emplace(b.require(qa), a.gen(qa) + time_derivative(bwd));
  }
  return tr;
}

TransformationDef abelianizing_transformation(const TheoryDef& grav, const TheoryDef& abelian) {
  TransformationDef tr;
  tr.name = "abelianize";
  tr.from = grav.alg.get();
  tr.to = abelian.alg.get();
  const Algebra& a = *grav.alg;
  const Algebra& b = *abelian.alg;
  // xi = c / sqrt(g), xi_a = sqrt(g) c_a, g_a picks up the c_a c shift
  tr.bindings.emplace(a.require("xi"), b.gen("c") * b.gen_pow(b.require("g"), Rat(-1, 2)));
  tr.bindings.emplace(a.require("xi_a"), b.gen_pow(b.require("g"), Rat(1, 2)) * b.gen("c_a"));
  tr.bindings.emplace(a.require("g_a"),
                      b.gen("g_a") + (b.gen("c_a") * b.gen("c") * b.gen_pow(b.require("g"), Rat(-1)))
                                         .scaled(Coeff(1, 2)));
  tr.inverse_bindings.emplace(b.require("c"), a.gen_pow(a.require("g"), Rat(1, 2)) * a.gen("xi"));
  tr.inverse_bindings.emplace(b.require("c_a"), a.gen_pow(a.require("g"), Rat(-1, 2)) * a.gen("xi_a"));
  tr.inverse_bindings.emplace(b.require("g_a"),
                              a.gen("g_a") - (a.gen("xi_a") * a.gen("xi") * a.gen_pow(a.require("g"), Rat(-1)))
                                                 .scaled(Coeff(1, 2)));
  return tr;
}

TransformResult apply_field_transformation(const TheoryDef& t, const TransformationDef& tr,
                                           const TheoryDef& target) {
  TransformResult out;
  out.mapped = substitute(t.density, *target.alg, tr.bindings);
  out.potential = target.alg->zero();
  out.residue = target.alg->zero();
  GradedExpr diff = out.mapped - target.density;
  if (diff.is_zero()) {
    out.equal = out.exact = true;
    return out;
  }
  IbpResult r = ibp_reduce(diff);
  out.equal = r.exact;
  out.potential = r.potential;
  out.residue = r.residue;
  return out;
}

bool transformation_round_trip(const TransformationDef& tr) {
  auto closes = [](const Algebra& src, const Algebra& dst,
                   const std::map<GenId, GradedExpr>& fwd,
                   const std::map<GenId, GradedExpr>& bwd) {
    for (GenId g = 0; g < static_cast<GenId>(src.num_gens()); ++g) {
      const GenInfo& gi = src.info(g);
      if (gi.jet_order != 0 || gi.form_degree != 0) continue;
      GradedExpr there = substitute(src.gen(g), dst, fwd);
      GradedExpr back = substitute(there, src, bwd);
      if (!expr_equal(back, src.gen(g))) return false;
    }
    return true;
  };
  return closes(*tr.from, *tr.to, tr.bindings, tr.inverse_bindings) &&
         closes(*tr.to, *tr.from, tr.inverse_bindings, tr.bindings);
}

}  // namespace worldline
