#include "worldline/aksz.hpp"

#include <map>
#include <set>
#include <utility>

namespace worldline {

namespace {

std::string num_name(const char* stem, int i) { return stem + std::to_string(i); }

// dsymbols, Darboux pairs, alpha and the bracket; call once, after every
// generator of the target exists
void finish_target_structure(TargetData& t) {
  Algebra& alg = *t.alg;
  alg.create_dsymbols();
  t.pairs.clear();
  const int n = static_cast<int>(t.coords.size());
  for (int i = 0; i < n; ++i) t.pairs.push_back({t.momenta[i], t.coords[i], alg.num(Coeff(1))});
  t.pairs.push_back({t.ghost_mom, t.ghost, alg.num(Coeff(1))});
  const int nt = static_cast<int>(t.thetas.size());
  for (int i = 0; i < nt; ++i) {
    for (int j = i; j < nt; ++j) {
      GradedExpr c = t.theta_pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (c.is_zero()) continue;
      if (i == j) c = c.scaled(Coeff(1, 2));
      t.pairs.push_back({t.thetas[static_cast<std::size_t>(i)],
                         t.thetas[static_cast<std::size_t>(j)], std::move(c)});
    }
  }
  if (t.super_ghost != kNoGen) t.pairs.push_back({t.super_ghost_mom, t.super_ghost, alg.num(Coeff(1))});
  t.alpha = alg.zero();
  for (const DarbouxPair& p : t.pairs)
    t.alpha += p.coeff * alg.gen(p.a) * alg.gen(alg.info(p.b).dsymbol);
  t.phase = std::make_unique<PhaseSpace>(alg, t.pairs);
}

void check_master_equation(const TargetData& t) {
  GradedExpr cme = t.phase->bracket(t.sigma, t.sigma);
  if (!cme.is_zero())
    throw AlgebraError("target " + t.name + " violates {sigma, sigma} = 0: " + to_string(cme));
}

GradedExpr quadratic_f(const TargetData& t) {
  const Algebra& alg = *t.alg;
  GradedExpr f = t.potential_w;
  const int n = static_cast<int>(t.coords.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const GradedExpr& gij = t.metric_upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (gij.is_zero()) continue;
      GradedExpr pi = alg.gen(t.momenta[static_cast<std::size_t>(i)]) - t.gauge[static_cast<std::size_t>(i)];
      GradedExpr pj = alg.gen(t.momenta[static_cast<std::size_t>(j)]) - t.gauge[static_cast<std::size_t>(j)];
      f += (gij * pi * pj).scaled(Coeff(1, 2));
    }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// targets
// ---------------------------------------------------------------------------

TargetData target_skeleton(std::string name, int dim, bool with_potential) {
  if (dim < 1) throw AlgebraError("target dimension must be at least 1");
  TargetData t;
  t.name = std::move(name);
  t.alg = std::make_unique<Algebra>();
  Algebra& alg = *t.alg;
  for (int i = 1; i <= dim; ++i) t.coords.push_back(alg.field(num_name("q", i)));
  for (int i = 1; i <= dim; ++i) t.momenta.push_back(alg.field(num_name("p", i)));
  t.ghost = alg.ghost_field("c");
  t.ghost_mom = alg.field("b", Parity::odd, -1);
  t.metric_upper.assign(static_cast<std::size_t>(dim),
                        std::vector<GradedExpr>(static_cast<std::size_t>(dim), alg.zero()));
  t.gauge.assign(static_cast<std::size_t>(dim), alg.zero());
  t.potential_w = alg.zero();
  t.alpha = alg.zero();
  t.sigma = alg.zero();
  if (with_potential) {
    GenId v = abstract_scalar(alg, "V", t.coords);
    t.potential_w = alg.gen(v);
    t.abstract_roots.emplace_back("V");
  }
  return t;
}

void finish_quadratic_target(TargetData& t) {
  finish_target_structure(t);
  t.sigma = quadratic_f(t) * t.alg->gen(t.ghost);
  check_master_equation(t);
}

TargetData build_super_target(TargetData base, const std::vector<std::vector<Rat>>& theta_pairing) {
  TargetData t = std::move(base);
  Algebra& alg = *t.alg;
  if (!t.potential_w.is_zero())
    throw AlgebraError("odd sector requires a vanishing scalar potential");
  const int n = static_cast<int>(t.coords.size());
  if (static_cast<int>(theta_pairing.size()) != n)
    throw AlgebraError("theta pairing must match the coordinate count");
  for (int i = 1; i <= n; ++i) t.thetas.push_back(alg.field(num_name("th", i), Parity::odd));
  t.super_ghost = alg.field("gamma", Parity::even, 1);
  t.super_ghost_mom = alg.field("sigma", Parity::even, -1);
  t.theta_pairing.assign(static_cast<std::size_t>(n),
                         std::vector<GradedExpr>(static_cast<std::size_t>(n), alg.zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.theta_pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          alg.num(Coeff(theta_pairing[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  finish_target_structure(t);
  t.phi = alg.zero();
  for (int i = 0; i < n; ++i)
    t.phi += alg.gen(t.thetas[static_cast<std::size_t>(i)]) *
             (alg.gen(t.momenta[static_cast<std::size_t>(i)]) - t.gauge[static_cast<std::size_t>(i)]);
  GradedExpr f = t.phase->bracket(t.phi, t.phi).scaled(Coeff(1, 2));
  GradedExpr gam = alg.gen(t.super_ghost);
  t.sigma = f * alg.gen(t.ghost) + t.phi * gam - gam * gam * alg.gen(t.ghost_mom);
  check_master_equation(t);
  return t;
}

TargetData gravity_target(int dim) {
  TargetData t = target_skeleton("aksz_gravity_first_order", dim, true);
  Algebra& alg = *t.alg;
  GenId m = alg.constant("m", true);
  GenId en = alg.constant("E", true);
  for (int i = 0; i < dim; ++i)
    t.metric_upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = alg.gen_pow(m, Rat(-1));
  t.potential_w = alg.gen("V") - alg.gen(en);
  finish_quadratic_target(t);
  return t;
}

TargetData general_weight_target(int dim) {
  TargetData t = target_skeleton("aksz_general_f", dim, true);
  Algebra& alg = *t.alg;
  for (int i = 1; i <= dim; ++i) {
    GenId gi = alg.constant(num_name("G", i), true);
    t.metric_upper[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = alg.gen(gi);
  }
  for (int i = 1; i <= dim; ++i) {
    std::string root = num_name("A", i);
    GenId ai = abstract_scalar(alg, root, t.coords);
    t.gauge[static_cast<std::size_t>(i - 1)] = alg.gen(ai);
    t.abstract_roots.push_back(root);
  }
  finish_quadratic_target(t);
  return t;
}

TargetData minisuperspace_target() {
  TargetData t;
  t.name = "minisuperspace";
  t.alg = std::make_unique<Algebra>();
  Algebra& alg = *t.alg;
  GenId chi = alg.field("chi");
  GenId a = alg.field("a", Parity::even, 0, /*positive=*/true);
  t.coords = {chi, a};
  t.momenta = {alg.field("pchi"), alg.field("pa")};
  t.ghost = alg.ghost_field("c");
  t.ghost_mom = alg.field("b", Parity::odd, -1);
  GenId lam = alg.constant("Lambda", true);
  t.metric_upper.assign(2, std::vector<GradedExpr>(2, alg.zero()));
  t.gauge.assign(2, alg.zero());
  t.metric_upper[0][0] = alg.gen_pow(a, Rat(-1));
  t.metric_upper[1][1] = -alg.gen_pow(a, Rat(-1));
  t.potential_w = (alg.gen(chi) * alg.gen(chi) * alg.gen_pow(a, Rat(-1)) - alg.gen(a) +
                   alg.gen(lam) * alg.gen_pow(a, Rat(3)))
                      .scaled(Coeff(1, 2));
  t.alpha = alg.zero();
  t.sigma = alg.zero();
  finish_quadratic_target(t);
  return t;
}

TargetData free_target(int dim) {
  TargetData t = target_skeleton("free", dim, false);
  for (int i = 0; i < dim; ++i)
    t.metric_upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = t.alg->num(Coeff(1));
  finish_target_structure(t);
  return t;
}

TargetData spinning_flat_target() {
  TargetData t = target_skeleton("spinning_flat", 3, false);
  Algebra& alg = *t.alg;
  GenId bmag = alg.constant("B", true);
  for (int i = 0; i < 3; ++i)
    t.metric_upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = alg.num(Coeff(1));
  t.gauge[0] = (alg.gen(bmag) * alg.gen(t.coords[1])).scaled(Coeff(-1, 2));
  t.gauge[1] = (alg.gen(bmag) * alg.gen(t.coords[0])).scaled(Coeff(1, 2));
  std::vector<std::vector<Rat>> id(3, std::vector<Rat>(3, Rat(0)));
  for (int i = 0; i < 3; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(1);
  return build_super_target(std::move(t), id);
}

// ---------------------------------------------------------------------------
// superfield expansion
// ---------------------------------------------------------------------------

std::vector<SuperfieldRow> superfield_rows(const TargetData& t) {
  const Algebra& alg = *t.alg;
  std::vector<SuperfieldRow> rows;
  const int n = static_cast<int>(t.coords.size());
  for (int i = 0; i < n; ++i) {
    const std::string& p = alg.info(t.momenta[static_cast<std::size_t>(i)]).name;
    const std::string& q = alg.info(t.coords[static_cast<std::size_t>(i)]).name;
    rows.push_back({p, 1, p, -1, q + "_a"});
  }
  for (int i = 0; i < n; ++i) {
    const std::string& p = alg.info(t.momenta[static_cast<std::size_t>(i)]).name;
    const std::string& q = alg.info(t.coords[static_cast<std::size_t>(i)]).name;
    rows.push_back({q, 1, q, 1, p + "_a"});
  }
  const std::string& c = alg.info(t.ghost).name;
  rows.push_back({alg.info(t.ghost_mom).name, -1, "e_a", -1, c + "_a"});
  rows.push_back({c, 1, c, -1, "e"});
  for (GenId th : t.thetas) {
    const std::string& name = alg.info(th).name;
    rows.push_back({name, 1, name, 1, name + "_a"});
  }
  if (t.super_ghost != kNoGen) {
    rows.push_back({alg.info(t.super_ghost).name, 1, "gamma", -1, "nu"});
    rows.push_back({alg.info(t.super_ghost_mom).name, -1, "nu_a", -1, "gamma_a"});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// component action
// ---------------------------------------------------------------------------

AkszTheory build_aksz_action(const TargetData& t) {
  if (t.source_dim != 1) throw AlgebraError("only one-dimensional sources are supported");
  if (!t.phase) throw AlgebraError("target " + t.name + " was not finished");
  check_master_equation(t);

  const Algebra& ta = *t.alg;
  AkszTheory out;
  out.def.name = t.name;
  out.def.dim = static_cast<int>(t.coords.size());
  out.def.energy = EnergyMode::fixed;
  out.def.alg = std::make_unique<Algebra>();
  Algebra& alg = *out.def.alg;

  for (GenId g = 0; g < static_cast<GenId>(ta.num_gens()); ++g) {
    const GenInfo& gi = ta.info(g);
    if (gi.klass == GenClass::constant) alg.constant(gi.name, gi.positive);
  }
  for (GenId q : t.coords) {
    const GenInfo& gi = ta.info(q);
    out.coords.push_back(alg.field(gi.name, Parity::even, 0, gi.positive));
  }
  for (GenId p : t.momenta) out.momenta.push_back(alg.field(ta.info(p).name));
  out.einbein = alg.field("e", Parity::even, 0, /*positive=*/true);
  GenId cc = alg.ghost_field(ta.info(t.ghost).name);
  std::vector<GenId> cth;
  for (GenId th : t.thetas) cth.push_back(alg.field(ta.info(th).name, Parity::odd));
  GenId cgamma = kNoGen, cnu = kNoGen;
  if (t.super_ghost != kNoGen) {
    cgamma = alg.field("gamma", Parity::even, 1);
    cnu = alg.field("nu", Parity::odd, 0);
  }
  std::vector<GenId> cqa, cpa, ctha;
  for (GenId q : out.coords) cqa.push_back(alg.antifield(q));
  for (GenId p : out.momenta) out.momenta_anti.push_back(alg.antifield(p));
  GenId cea = alg.antifield(out.einbein);
  GenId cca = alg.antifield(cc);
  for (GenId th : cth) ctha.push_back(alg.antifield(th));
  GenId cgamma_a = kNoGen, cnu_a = kNoGen;
  if (cgamma != kNoGen) {
    cgamma_a = alg.antifield(cgamma);
    cnu_a = alg.antifield(cnu);
  }
  for (const std::string& root : t.abstract_roots) abstract_scalar(alg, root, out.coords);
  out.abstract_roots = t.abstract_roots;
  GenId dt = alg.unknown("dt", Parity::odd, 0);
  alg.create_dsymbols();

  // expansion: target generator -> zero component + one component * dt
  GradedExpr dte = alg.gen(dt);
  std::map<GenId, GradedExpr> zero, shift;
  for (const SuperfieldRow& row : superfield_rows(t)) {
    GenId z = ta.require(row.target);
    GradedExpr z0 = alg.gen(row.zero);
    if (row.zero_sign < 0) z0 = -z0;
    GradedExpr z1 = alg.gen(row.one) * dte;
    if (row.one_sign < 0) z1 = -z1;
    zero.emplace(z, std::move(z0));
    shift.emplace(z, std::move(z1));
  }

  // kinetic term: sum over pairs of coeff * (full superfield a) * D(superfield b)
  GradedExpr total = alg.zero();
  for (const DarbouxPair& p : t.pairs) {
    GradedExpr coeff = substitute(p.coeff, alg, {});
    GradedExpr afull = zero.at(p.a) + shift.at(p.a);
    total += coeff * afull * dte * time_derivative(zero.at(p.b));
  }
  // hamiltonian on superfields; the shifts are nilpotent and pairwise
  // annihilating (each carries dt), so the first-order expansion is exact
  total += substitute(t.sigma, alg, zero);
  for (const auto& [z, h] : shift) {
    GradedExpr dz = chain_partial(t.sigma, z);
    if (!dz.is_zero()) total += h * substitute(dz, alg, zero);
  }

  // the action density is the far-left dt coefficient
  GradedExpr density(&alg);
  Monomial pat{Factor{dt, Rat(1)}};
  for (const Term& term : total.terms()) {
    auto [sign, cof] = divide_monomial(alg, term.m, pat);
    if (sign == 0) continue;
    density.push_term(sign < 0 ? neg(term.c) : term.c, std::move(cof));
  }
  density.normalize();
  out.def.density = density;

  for (std::size_t i = 0; i < out.coords.size(); ++i)
    out.def.pairs.push_back({out.coords[i], cqa[i]});
  for (std::size_t i = 0; i < out.momenta.size(); ++i)
    out.def.pairs.push_back({out.momenta[i], out.momenta_anti[i]});
  out.def.pairs.push_back({out.einbein, cea});
  out.def.pairs.push_back({cc, cca});
  for (std::size_t i = 0; i < cth.size(); ++i) out.def.pairs.push_back({cth[i], ctha[i]});
  if (cgamma != kNoGen) {
    out.def.pairs.push_back({cgamma, cgamma_a});
    out.def.pairs.push_back({cnu, cnu_a});
  }
  out.def.brst = brst_from_action(alg, out.def.density, out.def.pairs);

  const int n = static_cast<int>(t.coords.size());
  out.metric_comp.assign(static_cast<std::size_t>(n),
                         std::vector<GradedExpr>(static_cast<std::size_t>(n), alg.zero()));
  out.gauge_comp.assign(static_cast<std::size_t>(n), alg.zero());
  for (int i = 0; i < n; ++i) {
    out.gauge_comp[static_cast<std::size_t>(i)] =
        substitute(t.gauge[static_cast<std::size_t>(i)], alg, {});
    for (int j = 0; j < n; ++j)
      out.metric_comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          substitute(t.metric_upper[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], alg, {});
  }
  return out;
}

// ---------------------------------------------------------------------------
// momentum elimination
// ---------------------------------------------------------------------------

TheoryDef eliminate_momenta(const AkszTheory& t) {
  const Algebra& comp = t.def.algebra();
  TheoryDef out;
  out.name = t.def.name + "_second_order";
  out.dim = t.def.dim;
  out.energy = t.def.energy;
  out.alg = std::make_unique<Algebra>();
  Algebra& alg = *out.alg;

  for (GenId g = 0; g < static_cast<GenId>(comp.num_gens()); ++g) {
    const GenInfo& gi = comp.info(g);
    if (gi.klass == GenClass::constant) alg.constant(gi.name, gi.positive);
  }
  std::set<GenId> dropped(t.momenta.begin(), t.momenta.end());
  std::vector<GenId> qs;
  for (const FieldPair& p : t.def.pairs) {
    if (dropped.count(p.field)) continue;
    const GenInfo& fi = comp.info(p.field);
    GenId f = alg.field(fi.name, fi.parity, fi.ghost, fi.positive);
    out.pairs.push_back({f, alg.antifield(f)});
  }
  for (GenId q : t.coords) qs.push_back(alg.require(comp.info(q).name));
  for (const std::string& root : t.abstract_roots) abstract_scalar(alg, root, qs);
  alg.create_dsymbols();

  std::map<GenId, GradedExpr> bind;
  for (GenId pa : t.momenta_anti) bind.emplace(pa, alg.zero());
  const int n = t.def.dim;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (j != i && !t.metric_comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero())
        throw AlgebraError("momentum elimination requires a diagonal metric");
    const GradedExpr& gii = t.metric_comp[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (gii.is_zero()) throw AlgebraError("metric is degenerate in direction " + std::to_string(i + 1));
    GradedExpr denom = alg.gen("e") * substitute(gii, alg, {});
    if (denom.size() != 1)
      throw AlgebraError("cannot invert the metric entry " + to_string(gii));
    GradedExpr soln = substitute(t.gauge_comp[static_cast<std::size_t>(i)], alg, {}) +
                      expr_pow(denom, Rat(-1)) * alg.gen(alg.jet(qs[static_cast<std::size_t>(i)], 1));
    bind.emplace(t.momenta[static_cast<std::size_t>(i)], std::move(soln));
  }
  out.density = substitute(t.def.density, alg, bind);
  out.brst = brst_from_action(alg, out.density, out.pairs);
  return out;
}

}  // namespace worldline
