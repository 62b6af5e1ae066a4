#pragma once

// Exact integer / rational scalars. All arithmetic in this library is exact;
// no floating point is used anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "latvoa/error.hpp"

namespace latvoa {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// gcd(a,b) together with u,v such that u*a + v*b == g.
inline Int int_gcdext(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

// Floor of sqrt(n); n must be non-negative.
inline Int int_sqrt_floor(const Int& n) {
  if (n < 0) throw invalid_input("int_sqrt_floor: negative argument");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Binomial coefficient with arbitrary rational top argument:
// binom(c, t) = c (c-1) ... (c-t+1) / t!.  Valid for negative and
// fractional c, which is what a formal power of (1 - w x) needs.
inline Rat rat_binomial(const Rat& c, unsigned long t) {
  Rat num(1);
  for (unsigned long i = 0; i < t; ++i) num *= c - Rat(static_cast<long>(i));
  return num / Rat(factorial(t));
}

inline Int int_binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Serialized form used by the CLI: "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rat& q) {
  Rat c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw invalid_input("rat_parse: malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace latvoa
