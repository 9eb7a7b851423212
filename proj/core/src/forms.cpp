#include "worldline/forms.hpp"

namespace worldline {

Derivation interior_product(const Algebra& alg, int vf_parity,
                            const std::map<GenId, GradedExpr>& comps) {
  Derivation io;
  io.alg = &alg;
  io.parity = (vf_parity + 1) % 2;
  for (const auto& [z, comp] : comps) io.set(alg.dsym(z), comp);
  return io;
}

Derivation ghost_euler_interior(const Algebra& alg) {
  std::map<GenId, GradedExpr> comps;
  for (GenId g = 0; g < static_cast<GenId>(alg.num_gens()); ++g) {
    const GenInfo& gi = alg.info(g);
    if (gi.form_degree != 0 || gi.jet_order != 0 || gi.dependent) continue;
    if (gi.klass != GenClass::field && gi.klass != GenClass::antifield) continue;
    if (gi.ghost == 0 || gi.dsymbol == kNoGen) continue;
    comps.emplace(g, alg.gen(g).scaled(Coeff(gi.ghost)));
  }
  return interior_product(alg, 0, comps);
}

std::vector<std::pair<GenId, GradedExpr>> one_form_coefficients(const GradedExpr& form) {
  const Algebra& alg = *form.algebra();
  std::map<GenId, GradedExpr> acc;
  for (const Term& t : form.terms()) {
    GenId ds = kNoGen;
    for (const Factor& f : t.m)
      if (alg.info(f.g).form_degree == 1) {
        if (ds != kNoGen || f.e != 1) throw AlgebraError("expression is not a one-form");
        ds = f.g;
      }
    if (ds == kNoGen) throw AlgebraError("expression is not a one-form");
    auto [sign, cof] = divide_monomial(alg, t.m, Monomial{Factor{ds, Rat(1)}});
    GradedExpr piece(&alg);
    piece.push_term(sign < 0 ? neg(t.c) : t.c, cof);
    piece.normalize();
    auto it = acc.emplace(alg.info(ds).dsym_of, alg.zero()).first;
    it->second += piece;
  }
  std::vector<std::pair<GenId, GradedExpr>> out;
  for (auto& [g, v] : acc)
    if (!v.is_zero()) out.emplace_back(g, std::move(v));
  return out;
}

}  // namespace worldline
