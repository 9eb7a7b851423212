#include "worldline/algebra.hpp"

#include "worldline/calculus.hpp"

#include <algorithm>

namespace worldline {

GenId Algebra::add_gen(GenInfo gi) {
  if (by_name_.count(gi.name)) throw AlgebraError("duplicate generator " + gi.name);
  GenId id = static_cast<GenId>(gens_.size());
  gens_.push_back(std::move(gi));
  by_name_[gens_.back().name] = id;
  return id;
}

GenId Algebra::constant(const std::string& name, bool positive) {
  GenInfo gi;
  gi.name = name;
  gi.positive = positive;
  gi.klass = GenClass::constant;
  gi.key_base = name;
  return add_gen(gi);
}

void Algebra::make_tower(GenId base, int depth) {
  GenId prev = base;
  const GenInfo b = info(base);
  std::string name = b.name;
  for (int k = 1; k <= depth; ++k) {
    name += "'";
    GenInfo gi;
    gi.name = name;
    gi.parity = b.parity;
    gi.ghost = b.ghost;
    gi.klass = b.klass;
    gi.base = base;
    gi.jet_order = k;
    gi.dependent = b.dependent;
    gi.ibp_level = b.ibp_level + k;
    gi.key_base = b.key_base;
    GenId id = add_gen(gi);
    gens_[static_cast<std::size_t>(prev)].next_jet = id;
    prev = id;
  }
}

GenId Algebra::field(const std::string& name, Parity p, long ghost, bool positive, int tower) {
  GenInfo gi;
  gi.name = name;
  gi.parity = p;
  gi.ghost = ghost;
  gi.positive = positive;
  gi.klass = GenClass::field;
  gi.key_base = name;
  GenId id = add_gen(gi);
  make_tower(id, tower);
  return id;
}

GenId Algebra::antifield(GenId field_gen, int tower) {
  const GenInfo& f = info(field_gen);
  if (f.jet_order != 0) throw AlgebraError("antifield of a jet generator");
  GenInfo gi;
  gi.name = f.name + "_a";
  gi.parity = f.parity == Parity::even ? Parity::odd : Parity::even;
  gi.ghost = -1 - f.ghost;
  gi.klass = GenClass::antifield;
  gi.key_base = gi.name;
  GenId id = add_gen(gi);
  make_tower(id, tower);
  return id;
}

GenId Algebra::unknown(const std::string& name, Parity p, long ghost) {
  GenInfo gi;
  gi.name = name;
  gi.parity = p;
  gi.ghost = ghost;
  gi.klass = GenClass::unknown;
  gi.key_base = name;
  return add_gen(gi);
}

GenId Algebra::dependent(const std::string& name, bool positive, int tower) {
  GenInfo gi;
  gi.name = name;
  gi.positive = positive;
  gi.klass = GenClass::field;
  gi.dependent = true;
  gi.key_base = name;
  GenId id = add_gen(gi);
  make_tower(id, tower);
  return id;
}

void Algebra::set_partial(GenId dep, GenId arg, const GradedExpr& value) {
  if (!info(dep).dependent) throw AlgebraError("set_partial on a free generator");
  if (info(arg).dependent) throw AlgebraError("dependent scalars must depend on free generators");
  partials_[dep].emplace_back(arg, value);
}

void Algebra::finalize_dependent(GenId dep) {
  auto it = partials_.find(dep);
  if (it == partials_.end()) throw AlgebraError("dependent scalar has no partials");
  // depth along the towers used when hunting total derivatives
  int level = 0;
  for (const auto& [arg, val] : it->second) level = std::max(level, info(arg).ibp_level);
  gens_[static_cast<std::size_t>(dep)].ibp_level = level;
  // prolong: d(s^{(k)})/d(x^{(j)}) = d/dt[d(s^{(k-1)})/d(x^{(j)})] + d(s^{(k-1)})/d(x^{(j-1)})
  GenId prev = dep;
  for (GenId cur = info(dep).next_jet; cur != kNoGen; cur = info(cur).next_jet) {
    gens_[static_cast<std::size_t>(cur)].ibp_level = level + info(cur).jet_order;
    std::map<GenId, GradedExpr> acc;
    for (const auto& [arg, val] : partials_[prev]) {
      GradedExpr dval = time_derivative(val);
      auto ins = acc.emplace(arg, dval);
      if (!ins.second) ins.first->second += dval;
      GenId up = info(arg).next_jet;
      if (up == kNoGen) throw AlgebraError("tower exhausted prolonging " + info(cur).name);
      auto in2 = acc.emplace(up, val);
      if (!in2.second) in2.first->second += val;
    }
    auto& vec = partials_[cur];
    vec.clear();
    for (auto& [arg, val] : acc)
      if (!val.is_zero()) vec.emplace_back(arg, std::move(val));
    prev = cur;
  }
}

void Algebra::create_dsymbols() {
  std::size_t n = gens_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GenInfo b = gens_[i];
    if (b.klass == GenClass::constant || b.klass == GenClass::unknown) continue;
    if (b.form_degree != 0) continue;
    GenInfo gi;
    gi.name = "d" + b.name;
    gi.parity = b.parity == Parity::even ? Parity::odd : Parity::even;
    gi.ghost = b.ghost;
    gi.klass = b.klass;
    gi.form_degree = 1;
    gi.dsym_of = static_cast<GenId>(i);
    gi.jet_order = b.jet_order;
    gi.ibp_level = b.ibp_level;
    gi.key_dsym = 1;
    gi.key_base = b.key_base;
    GenId id = add_gen(gi);
    gens_[i].dsymbol = id;
  }
}

void Algebra::add_relation(const std::string& name, const GradedExpr& lhs, const GradedExpr& rhs) {
  if (lhs.algebra() != this || (rhs.algebra() != this && !rhs.is_zero()))
    throw AlgebraError("relation expressions belong to another algebra");
  Relation rel;
  rel.name = name;
  rel.lhs = lhs.terms();
  rel.rhs = rhs;
  if (rel.lhs.empty()) throw AlgebraError("relation with empty left side");
  for (const Term& l : rel.lhs) {
    if (l.m.empty()) throw AlgebraError("relation lhs contains a constant term");
    for (const Term& r : rel.rhs.terms())
      if (!monomial_less(*this, r.m, l.m))
        throw AlgebraError("relation " + name + " is not order-decreasing");
  }
  relations_.push_back(std::move(rel));
}

GenId Algebra::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? kNoGen : it->second;
}

GenId Algebra::require(const std::string& name) const {
  GenId g = find(name);
  if (g == kNoGen) throw AlgebraError("unknown generator " + name);
  return g;
}

GenId Algebra::jet(GenId base, int order) const {
  GenId g = base;
  for (int k = 0; k < order; ++k) {
    g = info(g).next_jet;
    if (g == kNoGen) throw AlgebraError("jet tower of " + info(base).name + " too short");
  }
  return g;
}

GenId Algebra::dsym(GenId g) const {
  GenId d = info(g).dsymbol;
  if (d == kNoGen) throw AlgebraError("no d-symbol for " + info(g).name);
  return d;
}

const std::vector<std::pair<GenId, GradedExpr>>* Algebra::partials(GenId dep) const {
  auto it = partials_.find(dep);
  return it == partials_.end() ? nullptr : &it->second;
}

bool Algebra::rank_less(GenId a, GenId b) const {
  const GenInfo& x = info(a);
  const GenInfo& y = info(b);
  if (x.key_dsym != y.key_dsym) return x.key_dsym < y.key_dsym;
  if (x.klass != y.klass) return static_cast<int>(x.klass) < static_cast<int>(y.klass);
  if (x.key_base != y.key_base) return x.key_base < y.key_base;
  if (x.jet_order != y.jet_order) return x.jet_order < y.jet_order;
  return x.name < y.name;
}

GradedExpr Algebra::num(const Coeff& c) const {
  GradedExpr e(this);
  e.push_term(c, {});
  return e;
}

GradedExpr Algebra::gen(GenId g) const {
  GradedExpr e(this);
  e.push_term(Coeff(1), {{g, Rat(1)}});
  return e;
}

GradedExpr Algebra::gen_pow(GenId g, const Rat& ex) const {
  const GenInfo& gi = info(g);
  bool ok;
  if (gi.parity == Parity::odd)
    ok = ex == 1 || ex == 0;
  else if (gi.positive)
    ok = true;
  else
    ok = is_integer(ex) && ex >= 0;
  if (!ok) throw AlgebraError("invalid exponent on " + gi.name);
  GradedExpr e(this);
  if (ex == 0) {
    e.push_term(Coeff(1), {});
  } else {
    e.push_term(Coeff(1), {{g, ex}});
  }
  return e;
}

}  // namespace worldline
