#include "worldline/calculus.hpp"

#include <algorithm>
#include <optional>

namespace worldline {

namespace {

// successor generator under d/dt, or kNoGen when the derivative vanishes
GenId dt_successor(const Algebra& alg, GenId g) {
  const GenInfo& gi = alg.info(g);
  if (gi.klass == GenClass::constant) return kNoGen;
  if (gi.klass == GenClass::unknown)
    throw AlgebraError("time derivative of unknown coefficient " + gi.name);
  if (gi.form_degree == 1) {
    GenId nb = alg.info(gi.dsym_of).next_jet;
    if (nb == kNoGen) throw AlgebraError("tower exhausted under d-symbol of " + gi.name);
    return alg.dsym(nb);
  }
  if (gi.next_jet == kNoGen) throw AlgebraError("jet tower exhausted at " + gi.name);
  return gi.next_jet;
}

// multiply an accumulating (sign, monomial) by one factor
void mono_mul_factor(const Algebra& alg, int& sign, Monomial& m, GenId g, const Rat& e) {
  if (e == 0 || sign == 0) return;
  auto [s, prod] = mul_monomials(alg, m, Monomial{Factor{g, e}});
  sign *= s;
  m = std::move(prod);
}

}  // namespace

GradedExpr time_derivative(const GradedExpr& e) {
  const Algebra* alg = e.algebra();
  GradedExpr out(alg);
  for (const Term& t : e.terms()) {
    for (std::size_t i = 0; i < t.m.size(); ++i) {
      GenId succ = dt_successor(*alg, t.m[i].g);
      if (succ == kNoGen) continue;
      int sign = 1;
      Monomial m;
      for (std::size_t j = 0; j < t.m.size(); ++j) {
        if (j == i) {
          mono_mul_factor(*alg, sign, m, t.m[j].g, t.m[j].e - 1);
          mono_mul_factor(*alg, sign, m, succ, Rat(1));
        } else {
          mono_mul_factor(*alg, sign, m, t.m[j].g, t.m[j].e);
        }
        if (sign == 0) break;
      }
      if (sign == 0) continue;
      Coeff c = mul(t.c, Coeff(t.m[i].e));
      if (sign < 0) c = neg(c);
      out.push_term(c, std::move(m));
    }
  }
  out.normalize();
  return out;
}

GradedExpr time_derivative(const GradedExpr& e, int k) {
  GradedExpr out = e;
  for (int i = 0; i < k; ++i) out = time_derivative(out);
  return out;
}

GradedExpr partial(const GradedExpr& e, GenId x) {
  const Algebra* alg = e.algebra();
  GradedExpr out(alg);
  if (!alg) return out;
  bool x_odd = alg->info(x).parity == Parity::odd;
  for (const Term& t : e.terms()) {
    for (std::size_t i = 0; i < t.m.size(); ++i) {
      if (t.m[i].g != x) continue;
      int sign = 1;
      if (x_odd) {
        int before = 0;
        for (std::size_t j = 0; j < i; ++j)
          if (alg->info(t.m[j].g).parity == Parity::odd) ++before;
        if (before & 1) sign = -1;
      }
      Monomial m;
      m.reserve(t.m.size());
      for (std::size_t j = 0; j < t.m.size(); ++j) {
        if (j == i) {
          if (t.m[j].e != 1) m.push_back({x, t.m[j].e - 1});
        } else {
          m.push_back(t.m[j]);
        }
      }
      Coeff c = mul(t.c, Coeff(t.m[i].e));
      if (sign < 0) c = neg(c);
      out.push_term(c, std::move(m));
      break;  // x occurs in one position of a sorted monomial
    }
  }
  out.normalize();
  return out;
}

GradedExpr chain_partial(const GradedExpr& e, GenId x) {
  const Algebra* alg = e.algebra();
  GradedExpr out = partial(e, x);
  if (!alg) return out;
  for (const auto& [dep, parts] : alg->dependent_partials()) {
    for (const auto& [arg, val] : parts) {
      if (arg != x) continue;
      GradedExpr piece = partial(e, dep);
      if (!piece.is_zero()) out += piece * val;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// derivations
// ---------------------------------------------------------------------------

namespace {

struct DerivationCtx {
  const Derivation& D;
  std::map<GenId, GradedExpr> memo;

  const GradedExpr& value(GenId g) {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    auto vi = D.vals.find(g);
    if (vi != D.vals.end()) return memo.emplace(g, vi->second).first->second;
    const Algebra& alg = *D.alg;
    const GenInfo& gi = alg.info(g);
    GradedExpr v(&alg);
    if (gi.dependent) {
      if (const auto* parts = alg.partials(g)) {
        for (const auto& [arg, p] : *parts) {
          const GradedExpr& va = value(arg);
          if (!va.is_zero()) v += p * va;
        }
      }
    } else if (gi.jet_order > 0 && gi.form_degree == 0) {
      // jets commute with d/dt: walk up from the base
      GenId below = gi.base;
      for (int k = 1; k < gi.jet_order; ++k) below = alg.info(below).next_jet;
      v = time_derivative(value(below));
    } else if (gi.jet_order > 0 && gi.form_degree == 1) {
      // d-symbols of jets prolong the same way: D(dx^(k)) = d/dt D(dx^(k-1))
      GenId below = alg.dsym(alg.jet(alg.info(gi.dsym_of).base, gi.jet_order - 1));
      v = time_derivative(value(below));
    }
    return memo.emplace(g, std::move(v)).first->second;
  }
};

}  // namespace

GradedExpr apply(const Derivation& D, const GradedExpr& e) {
  const Algebra& alg = *D.alg;
  DerivationCtx ctx{D, {}};
  GradedExpr out(&alg);
  for (const Term& t : e.terms()) {
    int prefix_odd = 0;
    for (std::size_t i = 0; i < t.m.size(); ++i) {
      const Factor& f = t.m[i];
      const GradedExpr& dv = ctx.value(f.g);
      if (!dv.is_zero()) {
        // prefix * e_i * g^(e_i - 1) * D(g) * suffix, with the derivation
        // crossing sign over the prefix
        GradedExpr piece(&alg);
        int sign = (D.parity && (prefix_odd & 1)) ? -1 : 1;
        Monomial pre;
        int ps = 1;
        for (std::size_t j = 0; j < i; ++j) mono_mul_factor(alg, ps, pre, t.m[j].g, t.m[j].e);
        mono_mul_factor(alg, ps, pre, f.g, f.e - 1);
        if (ps != 0) {
          Coeff c = mul(t.c, Coeff(f.e));
          if (ps * sign < 0) c = neg(c);
          piece.push_term(c, pre);
          piece.normalize();
          piece *= dv;
          Monomial suf;
          int ss = 1;
          for (std::size_t j = i + 1; j < t.m.size(); ++j)
            mono_mul_factor(alg, ss, suf, t.m[j].g, t.m[j].e);
          if (ss != 0) {
            GradedExpr sufe(&alg);
            sufe.push_term(ss < 0 ? Coeff(-1) : Coeff(1), suf);
            piece *= sufe;
            out += piece;
          }
        }
      }
      if (alg.info(f.g).parity == Parity::odd) ++prefix_odd;
    }
  }
  out.normalize();
  return out;
}

GradedExpr euler_derivative(const GradedExpr& density, GenId phi) {
  const Algebra& alg = *density.algebra();
  GradedExpr out(&alg);
  GenId g = phi;
  int k = 0;
  while (g != kNoGen) {
    GradedExpr p = chain_partial(density, g);
    if (!p.is_zero()) {
      p = time_derivative(p, k);
      if (k & 1) p = -p;
      out += p;
    }
    g = alg.info(g).next_jet;
    ++k;
  }
  return out;
}

GradedExpr field_variation(const GradedExpr& density) {
  const Algebra& alg = *density.algebra();
  Derivation delta;
  delta.alg = &alg;
  delta.parity = 1;
  for (GenId g = 0; g < static_cast<GenId>(alg.num_gens()); ++g) {
    const GenInfo& gi = alg.info(g);
    if (gi.jet_order != 0 || gi.form_degree != 0 || gi.dependent) continue;
    if (gi.klass != GenClass::field && gi.klass != GenClass::antifield) continue;
    delta.set(g, alg.gen(alg.dsym(g)));
  }
  return apply(delta, density);
}

// ---------------------------------------------------------------------------
// integration by parts
// ---------------------------------------------------------------------------

namespace {

// replace the single factor `g` (exponent 1) of t by `repl`, keeping position
GradedExpr replace_factor(const Algebra& alg, const Term& t, GenId g, GenId repl) {
  GradedExpr out(&alg);
  int sign = 1;
  Monomial m;
  for (const Factor& f : t.m) {
    if (f.g == g) {
      mono_mul_factor(alg, sign, m, repl, Rat(1));
    } else {
      mono_mul_factor(alg, sign, m, f.g, f.e);
    }
    if (sign == 0) return out;
  }
  out.push_term(sign < 0 ? neg(t.c) : t.c, std::move(m));
  out.normalize();
  return out;
}

}  // namespace

VariationalSplit variational_split(const GradedExpr& density) {
  const Algebra& alg = *density.algebra();
  GradedExpr work = field_variation(density);
  VariationalSplit out;
  out.boundary = alg.zero();
  int guard = 0;
  for (;;) {
    // find the d-symbol of the highest jet present
    const Term* best = nullptr;
    GenId bestg = kNoGen;
    for (const Term& t : work.terms()) {
      for (const Factor& f : t.m) {
        const GenInfo& gi = alg.info(f.g);
        if (gi.form_degree != 1 || gi.jet_order == 0) continue;
        if (bestg == kNoGen || gi.ibp_level > alg.info(bestg).ibp_level ||
            (gi.ibp_level == alg.info(bestg).ibp_level && alg.rank_less(bestg, f.g))) {
          bestg = f.g;
          best = &t;
        }
      }
    }
    if (!best) break;
    if (++guard > 5000) throw AlgebraError("variational reduction did not settle");
    const GenInfo& gi = alg.info(bestg);
    GenId under = gi.dsym_of;
    GenId below = alg.jet(alg.info(under).base, gi.jet_order - 1);
    GradedExpr piece = replace_factor(alg, *best, bestg, alg.dsym(below));
    out.boundary += piece;
    work -= time_derivative(piece);
  }
  // what remains is sum over order-0 d-symbols: d(phi) * coefficient
  std::map<GenId, GradedExpr> euler;
  for (const Term& t : work.terms()) {
    GenId ds = kNoGen;
    for (const Factor& f : t.m)
      if (alg.info(f.g).form_degree == 1) {
        ds = f.g;
        break;
      }
    if (ds == kNoGen) throw AlgebraError("variational remainder is not a one-form");
    auto [sign, cof] = divide_monomial(alg, t.m, Monomial{Factor{ds, Rat(1)}});
    if (sign == 0) throw AlgebraError("variational remainder defies extraction");
    GradedExpr piece(&alg);
    piece.push_term(sign < 0 ? neg(t.c) : t.c, cof);
    piece.normalize();
    GenId under = alg.info(ds).dsym_of;
    auto it = euler.emplace(under, alg.zero()).first;
    it->second += piece;
  }
  for (auto& [g, v] : euler)
    if (!v.is_zero()) out.euler.emplace_back(g, std::move(v));
  return out;
}

IbpResult ibp_reduce(const GradedExpr& e) {
  const Algebra& alg = *e.algebra();
  IbpResult res;
  res.potential = alg.zero();
  res.residue = alg.zero();
  GradedExpr work = e;
  int guard = 0;
  while (!work.is_zero()) {
    if (++guard > 2000) {
      res.residue = work;
      return res;
    }
    // best candidate: highest (ibp_level, rank) among jets present anywhere
    GenId bestg = kNoGen;
    for (const Term& t : work.terms()) {
      for (const Factor& f : t.m) {
        const GenInfo& gi = alg.info(f.g);
        if (gi.jet_order == 0 || gi.ibp_level < 1) continue;
        if (bestg == kNoGen || gi.ibp_level > alg.info(bestg).ibp_level ||
            (gi.ibp_level == alg.info(bestg).ibp_level && alg.rank_less(bestg, f.g)))
          bestg = f.g;
      }
    }
    if (bestg == kNoGen) {
      res.residue = work;
      return res;
    }
    // integrate one term containing it: c*M*pred^j*x -> c/(j+1)*M*pred^(j+1)
    const GenInfo& gi = alg.info(bestg);
    GenId pred;
    if (gi.form_degree == 1) {
      pred = alg.dsym(alg.jet(alg.info(gi.dsym_of).base, gi.jet_order - 1));
    } else {
      pred = alg.jet(gi.base, gi.jet_order - 1);
    }
    std::optional<GradedExpr> piece;
    for (const Term& t : work.terms()) {
      Rat xe(0), je(0);
      for (const Factor& f : t.m) {
        if (f.g == bestg) xe = f.e;
        if (f.g == pred) je = f.e;
      }
      if (xe != 1) continue;
      if (alg.info(pred).parity == Parity::odd && je != 0) continue;  // pred^2 = 0
      GradedExpr cand(&alg);
      int sign = 1;
      Monomial m;
      for (const Factor& f : t.m) {
        if (f.g == bestg) {
          mono_mul_factor(alg, sign, m, pred, Rat(1));
        } else {
          mono_mul_factor(alg, sign, m, f.g, f.e);
        }
        if (sign == 0) break;
      }
      if (sign == 0) continue;
      Coeff c = div(t.c, Coeff(je + 1));
      if (sign < 0) c = neg(c);
      cand.push_term(c, std::move(m));
      cand.normalize();
      piece = std::move(cand);
      break;
    }
    if (!piece) {
      res.residue = work;
      return res;
    }
    res.potential += *piece;
    work -= time_derivative(*piece);
  }
  res.exact = true;
  return res;
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

namespace {

struct SubstCtx {
  const Algebra& to;
  const std::map<GenId, GradedExpr>& bindings;
  const Algebra& from;
  std::map<GenId, GradedExpr> memo;

  const GradedExpr& image(GenId g) {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    auto bi = bindings.find(g);
    if (bi != bindings.end()) return memo.emplace(g, bi->second).first->second;
    const GenInfo& gi = from.info(g);
    if (gi.jet_order > 0 && gi.form_degree == 0 && bindings.count(gi.base)) {
      GenId below = gi.base;
      for (int k = 1; k < gi.jet_order; ++k) below = from.info(below).next_jet;
      GradedExpr v = time_derivative(image(below));
      return memo.emplace(g, std::move(v)).first->second;
    }
    return memo.emplace(g, to.gen(to.require(gi.name))).first->second;
  }
};

}  // namespace

GradedExpr substitute(const GradedExpr& e, const Algebra& to,
                      const std::map<GenId, GradedExpr>& bindings) {
  const Algebra& from = *e.algebra();
  SubstCtx ctx{to, bindings, from, {}};
  GradedExpr out(&to);
  for (const Term& t : e.terms()) {
    GradedExpr acc = to.num(t.c);
    for (const Factor& f : t.m) {
      acc *= expr_pow(ctx.image(f.g), f.e);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

}  // namespace worldline
