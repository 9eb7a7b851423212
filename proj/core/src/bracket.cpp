#include "worldline/bracket.hpp"

#include <algorithm>

namespace worldline {

PhaseSpace::PhaseSpace(Algebra& alg, std::vector<DarbouxPair> pairs)
    : alg_(&alg), pairs_(std::move(pairs)) {
  for (const DarbouxPair& p : pairs_) {
    for (GenId z : {p.a, p.b})
      if (std::find(coords_.begin(), coords_.end(), z) == coords_.end()) coords_.push_back(z);
  }
  for (GenId z : coords_) {
    for (int par = 0; par < 2; ++par) {
      std::string name = "_X" + std::to_string(par) + "_" + alg.info(z).name;
      slots_[{z, par}] = alg.unknown(name, par ? Parity::odd : Parity::even, 0);
    }
  }
}

GradedExpr PhaseSpace::symplectic_form() const {
  GradedExpr om = alg_->zero();
  for (const DarbouxPair& p : pairs_)
    om += p.coeff * alg_->gen(alg_->dsym(p.a)) * alg_->gen(alg_->dsym(p.b));
  return om;
}

std::map<GenId, GradedExpr> PhaseSpace::hamiltonian_components(const GradedExpr& f) const {
  const Algebra& alg = *alg_;
  int pf = expr_parity(f);
  // generic ansatz: one unknown slot per coordinate, parity fixed by f
  std::map<GenId, GradedExpr> comps;
  std::vector<GenId> used;
  for (GenId z : coords_) {
    int par = (pf + static_cast<int>(alg.info(z).parity)) % 2;
    GenId u = slots_.at({z, par});
    comps.emplace(z, alg.gen(u));
    used.push_back(u);
  }
  Derivation ix = interior_product(alg, pf, comps);
  GradedExpr eq_form = apply(ix, symplectic_form()) - exterior_d(f);
  auto eqs = one_form_coefficients(eq_form);
  // iteratively isolate unknowns; every equation is linear with constant
  // Darboux coefficients, so this settles in a couple of sweeps
  std::map<GenId, GradedExpr> solved;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [z, eq] : eqs) {
      if (eq.is_zero()) continue;
      GenId only = kNoGen;
      int count = 0;
      for (const Term& t : eq.terms())
        for (const Factor& fac : t.m)
          if (alg.info(fac.g).klass == GenClass::unknown) {
            if (fac.g != only) ++count;
            only = fac.g;
          }
      if (count != 1) continue;
      GradedExpr a = partial(eq, only);
      std::map<GenId, GradedExpr> kill;
      kill.emplace(only, alg.zero());
      GradedExpr b = substitute(eq, alg, kill);
      GradedExpr ainv = expr_pow(a, Rat(-1));
      bool ok = false;
      for (int s : {1, -1}) {
        GradedExpr cand = (ainv * b).scaled(Coeff(-s));
        std::map<GenId, GradedExpr> bind;
        bind.emplace(only, cand);
        if (substitute(eq, alg, bind).is_zero()) {
          solved[only] = cand;
          ok = true;
          break;
        }
      }
      if (!ok) throw AlgebraError("hamiltonian field solve failed on a component");
      // propagate into all remaining equations
      std::map<GenId, GradedExpr> bind;
      bind.emplace(only, solved[only]);
      for (auto& [z2, eq2] : eqs) eq2 = substitute(eq2, alg, bind);
      progress = true;
    }
  }
  for (const auto& [z, eq] : eqs)
    if (!eq.is_zero()) throw AlgebraError("symplectic form is degenerate for this function");
  std::map<GenId, GradedExpr> out;
  for (GenId z : coords_) {
    int par = (pf + static_cast<int>(alg.info(z).parity)) % 2;
    GenId u = slots_.at({z, par});
    auto it = solved.find(u);
    out.emplace(z, it == solved.end() ? alg.zero() : it->second);
  }
  return out;
}

GradedExpr PhaseSpace::bracket(const GradedExpr& f, const GradedExpr& g) const {
  if (f.is_zero() || g.is_zero()) return alg_->zero();
  Derivation xf;
  xf.alg = alg_;
  xf.parity = expr_parity(f);
  for (auto& [z, comp] : hamiltonian_components(f)) xf.set(z, comp);
  return apply(xf, g);
}

}  // namespace worldline
