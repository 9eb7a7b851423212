#pragma once
// Exact scalar coefficients: a rational number times a product of fractional
// powers of primes (2^(1/2), 3^(2/3), ...).  Keeping the radical part exact is
// what lets square roots of numeric constants survive normalization without
// floating point ever entering the symbolic layer.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace worldline {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

struct AlgebraError : std::runtime_error {
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline long to_long(const Rat& r) {
  if (!is_integer(r)) throw AlgebraError("expected integer rational");
  return static_cast<long>(numerator(r));
}

std::string rat_to_string(const Rat& r);

// r^e for integer e (e may be negative; r must be nonzero then).
Rat rat_pow_int(const Rat& r, long e);

// Radical part: sorted list of (prime, exponent) with exponent in (0,1).
using Radical = std::vector<std::pair<std::int64_t, Rat>>;

struct Coeff {
  Rat rat;       // exact rational factor
  Radical rad;   // product of prime^frac, frac strictly between 0 and 1

  Coeff() : rat(0) {}
  Coeff(long n) : rat(n) {}                  // NOLINT implicit by design
  Coeff(const Rat& r) : rat(r) {}            // NOLINT
  Coeff(long num, long den) : rat(Rat(num) / den) {}

  bool is_zero() const { return rat == 0; }
  bool is_one() const { return rat == 1 && rad.empty(); }
  bool is_rational() const { return rad.empty(); }

  friend bool operator==(const Coeff& a, const Coeff& b) {
    return a.rat == b.rat && a.rad == b.rad;
  }
};

// Multiplication always succeeds; addition requires equal radical parts
// (terms with different radicals never merge — the radical is part of the
// term key upstream).
Coeff mul(const Coeff& a, const Coeff& b);
Coeff neg(const Coeff& a);
Coeff add_same_radical(const Coeff& a, const Coeff& b);
Coeff div(const Coeff& a, const Coeff& b);

// (p/q)^(n/d) exactly.  Requires p/q > 0 unless the exponent is an integer.
// Throws if the base has a prime factor too large to factor quickly.
Coeff coeff_pow(const Coeff& base, const Rat& e);

// Total order on coefficients usable as a tie-break key (radical first).
int coeff_cmp(const Coeff& a, const Coeff& b);

std::string coeff_to_string(const Coeff& c);

}  // namespace worldline
