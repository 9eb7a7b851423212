#include "worldline/coeff.hpp"

#include <algorithm>
#include <sstream>

namespace worldline {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Rat rat_pow_int(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (r == 0 && e < 0) throw AlgebraError("division by zero in rational power");
  Rat base = e > 0 ? r : Rat(1) / r;
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

Coeff mul(const Coeff& a, const Coeff& b) {
  Coeff out;
  out.rat = a.rat * b.rat;
  if (out.rat == 0) return out;
  // merge radicals; exponents add, integer overflow folds into the rational
  std::size_t i = 0, j = 0;
  while (i < a.rad.size() || j < b.rad.size()) {
    if (j == b.rad.size() || (i < a.rad.size() && a.rad[i].first < b.rad[j].first)) {
      out.rad.push_back(a.rad[i++]);
    } else if (i == a.rad.size() || b.rad[j].first < a.rad[i].first) {
      out.rad.push_back(b.rad[j++]);
    } else {
      std::int64_t p = a.rad[i].first;
      Rat e = a.rad[i].second + b.rad[j].second;
      ++i;
      ++j;
      // e in (0, 2); an integer part of 1 moves into the rational factor
      if (e >= 1) {
        out.rat *= p;
        e -= 1;
      }
      if (e != 0) out.rad.emplace_back(p, e);
    }
  }
  return out;
}

Coeff neg(const Coeff& a) {
  Coeff out = a;
  out.rat = -out.rat;
  return out;
}

Coeff add_same_radical(const Coeff& a, const Coeff& b) {
  if (a.rad != b.rad) throw AlgebraError("adding coefficients with different radical parts");
  Coeff out;
  out.rat = a.rat + b.rat;
  if (out.rat != 0) out.rad = a.rad;
  return out;
}

Coeff div(const Coeff& a, const Coeff& b) {
  if (b.rat == 0) throw AlgebraError("division by zero coefficient");
  // invert b: prime^e -> prime^(1-e) / prime
  Coeff binv;
  binv.rat = Rat(1) / b.rat;
  for (const auto& [p, e] : b.rad) {
    binv.rat /= p;
    binv.rad.emplace_back(p, Rat(1) - e);
  }
  return mul(a, binv);
}

namespace {

// trial-division factorization; coefficients in this code base are small
void factor_into(const Int& n_in, std::vector<std::pair<std::int64_t, long>>& out) {
  if (n_in > Int(1) << 62) throw AlgebraError("coefficient too large to factor for radical power");
  std::int64_t n = static_cast<std::int64_t>(n_in);
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      long k = 0;
      while (n % p == 0) {
        n /= p;
        ++k;
      }
      out.emplace_back(p, k);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
}

}  // namespace

Coeff coeff_pow(const Coeff& base, const Rat& e) {
  if (is_integer(e)) {
    long k = to_long(e);
    Coeff out;
    out.rat = rat_pow_int(base.rat, k);
    if (out.rat == 0) return out;
    for (const auto& [p, f] : base.rad) {
      Rat fe = f * k;  // may be negative or exceed 1
      Int ip = numerator(fe) / denominator(fe);
      if (fe < 0 && fe != Rat(ip)) ip -= 1;  // floor
      Rat frac = fe - Rat(ip);
      out.rat *= rat_pow_int(Rat(p), static_cast<long>(ip));
      if (frac != 0) out.rad.emplace_back(p, frac);
    }
    std::sort(out.rad.begin(), out.rad.end());
    return out;
  }
  if (base.rat <= 0) throw AlgebraError("fractional power of a non-positive coefficient");
  // factor numerator and denominator, scale every prime exponent by e
  std::vector<std::pair<std::int64_t, long>> primes;
  factor_into(numerator(base.rat), primes);
  std::vector<std::pair<std::int64_t, long>> dprimes;
  factor_into(denominator(base.rat), dprimes);
  for (auto& [p, k] : dprimes) primes.emplace_back(p, -k);
  Coeff out;
  out.rat = 1;
  std::vector<std::pair<std::int64_t, Rat>> exps;
  for (const auto& [p, k] : primes) exps.emplace_back(p, Rat(k));
  for (const auto& [p, f] : base.rad) exps.emplace_back(p, f);
  std::sort(exps.begin(), exps.end());
  // combine duplicates
  std::vector<std::pair<std::int64_t, Rat>> merged;
  for (const auto& pe : exps) {
    if (!merged.empty() && merged.back().first == pe.first)
      merged.back().second += pe.second;
    else
      merged.push_back(pe);
  }
  for (const auto& [p, f] : merged) {
    Rat fe = f * e;
    Int ip = numerator(fe) / denominator(fe);
    if (fe < 0 && fe != Rat(ip)) ip -= 1;
    Rat frac = fe - Rat(ip);
    out.rat *= rat_pow_int(Rat(p), static_cast<long>(ip));
    if (frac != 0) out.rad.emplace_back(p, frac);
  }
  std::sort(out.rad.begin(), out.rad.end());
  return out;
}

int coeff_cmp(const Coeff& a, const Coeff& b) {
  if (a.rad != b.rad) return a.rad < b.rad ? -1 : 1;
  if (a.rat != b.rat) return a.rat < b.rat ? -1 : 1;
  return 0;
}

std::string coeff_to_string(const Coeff& c) {
  std::ostringstream os;
  os << rat_to_string(c.rat);
  for (const auto& [p, e] : c.rad) os << "*" << p << "^(" << rat_to_string(e) << ")";
  return os.str();
}

}  // namespace worldline
