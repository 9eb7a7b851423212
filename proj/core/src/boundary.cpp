#include "worldline/boundary.hpp"

#include <set>
#include <string>
#include <utility>

#include "worldline/parse.hpp"

namespace worldline {

namespace {

std::string num_name(const std::string& base, int i) { return base + std::to_string(i); }

// generators whose d-symbols occur in e, ascending
std::vector<GenId> form_bases(const GradedExpr& e) {
  const Algebra& alg = *e.algebra();
  std::set<GenId> seen;
  for (const Term& t : e.terms())
    for (const Factor& f : t.m) {
      const GenInfo& gi = alg.info(f.g);
      if (gi.form_degree == 1) seen.insert(gi.dsym_of);
    }
  return {seen.begin(), seen.end()};
}

std::string ansatz_name(const std::string& prefix, const std::string& gen) {
  std::string out = prefix + "_";
  for (char c : gen) out += (c == '\'') ? 't' : c;
  return out;
}

}  // namespace

PreBoundaryForm make_pre_boundary(const Algebra& alg, const GradedExpr& alpha) {
  PreBoundaryForm pre;
  pre.alg = &alg;
  pre.alpha = alpha;
  pre.omega = exterior_d(alpha);
  return pre;
}

PreBoundaryForm pre_boundary_form(const TheoryDef& t) {
  return make_pre_boundary(*t.alg, variational_split(t.density).boundary);
}

// ---------------------------------------------------------------------------
// kernel analysis
// ---------------------------------------------------------------------------

std::map<GenId, GenId> kernel_ansatz(Algebra& alg, const PreBoundaryForm& pre,
                                     const std::string& prefix) {
  std::map<GenId, GenId> out;
  for (GenId z : form_bases(pre.omega)) {
    const GenInfo& gi = alg.info(z);
    out.emplace(z, alg.unknown(ansatz_name(prefix, gi.name), gi.parity, gi.ghost));
  }
  return out;
}

std::vector<KernelEquation> kernel_equations(const PreBoundaryForm& pre,
                                             const std::map<GenId, GenId>& ansatz) {
  const Algebra& alg = *pre.alg;
  std::map<GenId, GradedExpr> comps;
  for (const auto& [z, k] : ansatz) comps.emplace(z, alg.gen(k));
  GradedExpr contracted = apply(interior_product(alg, 0, comps), pre.omega);
  std::vector<KernelEquation> eqs;
  for (auto& [form, coeff] : one_form_coefficients(contracted))
    eqs.push_back({form, std::move(coeff)});
  return eqs;
}

KernelCheck verify_kernel_field(const PreBoundaryForm& pre,
                                const std::map<GenId, GradedExpr>& components, int vf_parity) {
  // pointwise field on the endpoint phase space: unspecified directions are
  // zero, so pad them out explicitly before derivations prolong along jets
  std::map<GenId, GradedExpr> comps = components;
  for (GenId z : form_bases(pre.omega)) comps.emplace(z, pre.alg->zero());
  KernelCheck out;
  out.residue = apply(interior_product(*pre.alg, vf_parity, comps), pre.omega);
  out.in_kernel = out.residue.is_zero();
  return out;
}

SingularityReport singularity_probe(const std::vector<KernelEquation>& eqs,
                                    const std::map<GenId, GradedExpr>& locus) {
  SingularityReport rep;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const GradedExpr& lhs = eqs[i].lhs;
    GradedExpr at = substitute(lhs, *lhs.algebra(), locus);
    if (!lhs.is_zero() && at.is_zero()) rep.vanished.push_back(i);
    rep.specialized.push_back(std::move(at));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Roytenberg reduction
// ---------------------------------------------------------------------------

GradedExpr euler_contraction(const TheoryDef& t) {
  return apply(ghost_euler_interior(*t.alg), pre_boundary_form(t).omega);
}

GradedExpr roytenberg_density(const TheoryDef& t) {
  const Algebra& alg = *t.alg;
  GradedExpr ie = euler_contraction(t);
  std::map<GenId, GradedExpr> comps;
  for (GenId z : form_bases(ie)) comps.emplace(z, apply(t.brst, alg.gen(z)));
  return apply(interior_product(alg, 1, comps), ie);
}

GradedExpr pull_back(const BFVData& bfv, const Algebra& bulk, const GradedExpr& chart_expr) {
  const Algebra& ch = *bfv.alg;
  auto map_gen = [&](GenId g) -> GradedExpr {
    auto it = bfv.projection.find(g);
    if (it != bfv.projection.end()) return it->second;
    return bulk.gen(bulk.require(ch.info(g).name));
  };
  GradedExpr out(&bulk);
  for (const Term& tm : chart_expr.terms()) {
    GradedExpr prod = bulk.num(tm.c);
    for (const Factor& f : tm.m) {
      const GenInfo& gi = ch.info(f.g);
      GradedExpr img =
          gi.form_degree == 1 ? field_variation(map_gen(gi.dsym_of)) : map_gen(f.g);
      if (f.e == Rat(1)) {
        prod *= img;
      } else if (is_integer(f.e) && f.e > Rat(0)) {
        for (long k = 0; k < to_long(f.e); ++k) prod *= img;
      } else {
        prod *= expr_pow(img, f.e);
      }
    }
    out += prod;
  }
  return out;
}

ProjectionCheck verify_projection(const TheoryDef& t, const BFVData& bfv) {
  const Algebra& alg = *t.alg;
  PreBoundaryForm pre = pre_boundary_form(t);
  ProjectionCheck pc;
  GradedExpr alpha = substitute(pre.alpha, alg, bfv.endpoint_conditions);
  pc.alpha_residue = pull_back(bfv, alg, bfv.alpha_boundary) - alpha;
  pc.alpha_exact = pc.alpha_residue.is_zero();
  pc.alpha_closed = exterior_d(pc.alpha_residue).is_zero();
  GradedExpr density = substitute(roytenberg_density(t), alg, bfv.endpoint_conditions);
  pc.action_matches = expr_equal(pull_back(bfv, alg, bfv.s_boundary), density);
  return pc;
}

namespace {

void check_bfv(const TheoryDef& t, const BFVData& bfv) {
  ProjectionCheck pc = verify_projection(t, bfv);
  if (!(pc.alpha_exact || pc.alpha_closed) || !pc.action_matches)
    throw AlgebraError("declared boundary chart for '" + t.name +
                       "' fails the projection check");
  if (!bfv.phase->bracket(bfv.s_boundary, bfv.s_boundary).is_zero())
    throw AlgebraError("boundary action of '" + t.name + "' does not close under the bracket");
}

// bulk bindings sending a generator and its d-symbol to zero
void pin_at_endpoints(const Algebra& bulk, const std::string& name,
                      std::map<GenId, GradedExpr>& bc) {
  GenId g = bulk.require(name);
  bc.emplace(g, bulk.zero());
  bc.emplace(bulk.dsym(g), bulk.zero());
}

// chart with position/momentum pairs only: alpha = sum p dq
BFVData momentum_chart(const TheoryDef& t, const std::string& momentum_image) {
  BFVData bfv;
  bfv.alg = std::make_unique<Algebra>();
  Algebra& ch = *bfv.alg;
  std::vector<GenId> qs, ps;
  for (int i = 1; i <= t.dim; ++i) qs.push_back(ch.field(num_name("q", i)));
  for (int i = 1; i <= t.dim; ++i) ps.push_back(ch.field(num_name("p", i)));
  ch.create_dsymbols();
  bfv.alpha_boundary = ch.zero();
  for (int i = 0; i < t.dim; ++i) {
    bfv.pairs.push_back({ps[static_cast<std::size_t>(i)], qs[static_cast<std::size_t>(i)],
                         ch.num(Coeff(1))});
    bfv.alpha_boundary += ch.gen(ps[static_cast<std::size_t>(i)]) *
                          ch.gen(ch.info(qs[static_cast<std::size_t>(i)]).dsymbol);
  }
  bfv.s_boundary = ch.zero();
  bfv.phase = std::make_unique<PhaseSpace>(ch, bfv.pairs);
  const Algebra& bulk = *t.alg;
  for (int i = 0; i < t.dim; ++i) {
    bfv.coordinates.push_back(qs[static_cast<std::size_t>(i)]);
    bfv.projection.emplace(qs[static_cast<std::size_t>(i)],
                           bulk.gen(bulk.require(num_name("q", i + 1))));
  }
  for (int i = 0; i < t.dim; ++i) {
    bfv.coordinates.push_back(ps[static_cast<std::size_t>(i)]);
    std::string img = momentum_image;
    // the image template names the first coordinate; rewrite the index
    std::string placed;
    for (std::size_t j = 0; j < img.size(); ++j) {
      if (img[j] == '#')
        placed += std::to_string(i + 1);
      else
        placed += img[j];
    }
    bfv.projection.emplace(ps[static_cast<std::size_t>(i)], parse_expr(bulk, placed));
  }
  pin_at_endpoints(bulk, "xi", bfv.endpoint_conditions);
  return bfv;
}

// full constraint chart (q, p, b, c) with s = (|p|^2/2m + V - E) c
BFVData gravity_chart(const TheoryDef& t, bool abelian) {
  BFVData bfv;
  bfv.alg = std::make_unique<Algebra>();
  Algebra& ch = *bfv.alg;
  std::vector<GenId> qs, ps;
  for (int i = 1; i <= t.dim; ++i) qs.push_back(ch.field(num_name("q", i)));
  for (int i = 1; i <= t.dim; ++i) ps.push_back(ch.field(num_name("p", i)));
  GenId c = ch.ghost_field("c");
  GenId b = ch.field("b", Parity::odd, -1);
  GenId m = ch.constant("m", true);
  GenId en = ch.constant("E", true);
  GenId v = abstract_scalar(ch, "V", qs);
  ch.create_dsymbols();

  bfv.alpha_boundary = ch.zero();
  for (int i = 0; i < t.dim; ++i) {
    bfv.pairs.push_back({ps[static_cast<std::size_t>(i)], qs[static_cast<std::size_t>(i)],
                         ch.num(Coeff(1))});
    bfv.alpha_boundary += ch.gen(ps[static_cast<std::size_t>(i)]) *
                          ch.gen(ch.info(qs[static_cast<std::size_t>(i)]).dsymbol);
  }
  bfv.pairs.push_back({b, c, ch.num(Coeff(1))});
  bfv.alpha_boundary += ch.gen(b) * ch.gen(ch.info(c).dsymbol);

  GradedExpr h = ch.gen(v) - ch.gen(en);
  for (GenId p : ps) h += ch.gen(p) * ch.gen(p) * ch.gen_pow(m, Rat(-1)).scaled(Coeff(1, 2));
  bfv.s_boundary = h * ch.gen(c);
  bfv.phase = std::make_unique<PhaseSpace>(ch, bfv.pairs);

  const Algebra& bulk = *t.alg;
  for (int i = 0; i < t.dim; ++i) {
    std::string n = std::to_string(i + 1);
    bfv.projection.emplace(qs[static_cast<std::size_t>(i)], parse_expr(bulk, "q" + n));
    bfv.projection.emplace(
        ps[static_cast<std::size_t>(i)],
        parse_expr(bulk, abelian ? "m*g^(-1/2)*q" + n + "' - c*g^(-1/2)*q" + n + "_a"
                                 : "m*g^(-1/2)*q" + n + "' - xi*q" + n + "_a"));
  }
  bfv.projection.emplace(c, parse_expr(bulk, abelian ? "c" : "g^(1/2)*xi"));
  bfv.projection.emplace(b, parse_expr(bulk, abelian ? "-2*g^(1/2)*g_a"
                                                     : "g^(-1/2)*xi*xi_a - 2*g^(1/2)*g_a"));
  bfv.coordinates = qs;
  bfv.coordinates.insert(bfv.coordinates.end(), ps.begin(), ps.end());
  bfv.coordinates.push_back(c);
  bfv.coordinates.push_back(b);
  return bfv;
}

TargetData target_for(const TheoryDef& t) {
  if (t.name == "aksz_gravity_first_order") return gravity_target(t.dim);
  if (t.name == "aksz_general_f") return general_weight_target(t.dim);
  if (t.name == "minisuperspace") return minisuperspace_target();
  return spinning_flat_target();
}

}  // namespace

BFVData roytenberg_boundary_action(const TheoryDef& t) {
  const std::string& n = t.name;
  if (n == "jacobi")
    throw AlgebraError(
        "the boundary two-form of 'jacobi' is singular along 'xi': the kernel conditions "
        "proportional to xi collapse at xi = 0, so no constant-rank reduction exists; "
        "impose endpoint conditions instead");
  if (n == "jacobi_rewritten")
    throw AlgebraError(
        "'jacobi_rewritten' reduces to a tangent-sphere quotient; no global Darboux chart is "
        "declared");
  if (n == "jacobi_generalized" || n == "gravity_generalized")
    throw AlgebraError("'" + n +
                       "' carries a time-dependent energy profile that breaks the "
                       "reparametrization symmetry; there is no boundary constraint to reduce");

  BFVData bfv;
  if (n == "gravity" || n == "gravity_abelianized") {
    bfv = gravity_chart(t, n == "gravity_abelianized");
  } else if (n == "gravity_extended") {
    bfv = momentum_chart(t, "m*g^(-1/2)*q#'");
  } else if (n == "jacobi_extended") {
    bfv = momentum_chart(t, "2^(1/2)*E^(1/2)*m^(1/2)*q#'*r^(-1)");
  } else if (n == "aksz_gravity_first_order" || n == "aksz_general_f" ||
             n == "minisuperspace" || n == "spinning_flat") {
    bfv = boundary_of_aksz(target_for(t), t);
  } else {
    throw AlgebraError("no boundary reduction registered for theory '" + n + "'");
  }
  check_bfv(t, bfv);
  return bfv;
}

// ---------------------------------------------------------------------------
// AKSZ boundary
// ---------------------------------------------------------------------------

BFVData boundary_of_aksz(const TargetData& target, const TheoryDef& component) {
  const Algebra& src = *target.alg;
  BFVData bfv;
  bfv.alg = std::make_unique<Algebra>();
  Algebra& ch = *bfv.alg;

  std::set<std::string> roots(target.abstract_roots.begin(), target.abstract_roots.end());
  for (GenId g = 0; g < static_cast<GenId>(src.num_gens()); ++g) {
    const GenInfo& gi = src.info(g);
    if (gi.jet_order != 0 || gi.form_degree != 0) continue;
    if (ch.find(gi.name) != kNoGen) continue;
    if (gi.klass == GenClass::constant) {
      ch.constant(gi.name, gi.positive);
    } else if (gi.dependent) {
      if (!roots.count(gi.name))
        throw AlgebraError("target carries an unsupported dependent generator '" + gi.name +
                           "'");
      std::vector<GenId> qs;
      for (GenId q : target.coords) qs.push_back(ch.require(src.info(q).name));
      abstract_scalar(ch, gi.name, qs);
    } else if (gi.klass == GenClass::unknown) {
      continue;
    } else {
      ch.field(gi.name, gi.parity, gi.ghost, gi.positive);
    }
  }
  ch.create_dsymbols();

  for (const DarbouxPair& p : target.pairs) {
    bfv.pairs.push_back({ch.require(src.info(p.a).name), ch.require(src.info(p.b).name),
                         parse_expr(ch, to_string(p.coeff))});
    bfv.coordinates.push_back(bfv.pairs.back().a);
    if (bfv.pairs.back().b != bfv.pairs.back().a) bfv.coordinates.push_back(bfv.pairs.back().b);
  }
  bfv.alpha_boundary = parse_expr(ch, to_string(target.alpha));
  bfv.s_boundary = parse_expr(ch, to_string(target.sigma));
  bfv.phase = std::make_unique<PhaseSpace>(ch, bfv.pairs);

  for (const SuperfieldRow& row : superfield_rows(target)) {
    GradedExpr img = component.alg->gen(component.alg->require(row.zero));
    if (row.zero_sign < 0) img = -img;
    bfv.projection.emplace(ch.require(row.target), std::move(img));
  }
  return bfv;
}

}  // namespace worldline
