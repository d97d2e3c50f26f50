#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgl {

// Exact rational number. All arithmetic in the library is exact; there is no
// floating point anywhere on a verification path.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  if (!is_integer(r)) throw std::runtime_error("to_long: not an integer: " + r.get_str());
  if (!r.get_num().fits_slong_p()) throw std::runtime_error("to_long: out of range");
  return r.get_num().get_si();
}

// Floor as an integer rational.
inline Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

// r mod 2, reduced into [0,2). Used for phase exponents of e^{i pi r}.
inline Rat mod2(const Rat& r) {
  Rat f = rat_floor(r / 2);
  return r - 2 * f;
}

// "p" or "p/q" without spaces, canonical sign on the numerator.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::runtime_error("parse_rat: bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

// Generalized binomial coefficient binom(e, k) for rational e, integer k >= 0.
inline Rat rat_binom(const Rat& e, long k) {
  Rat acc = 1;
  for (long i = 0; i < k; ++i) acc *= (e - i) / (i + 1);
  return acc;
}

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::runtime_error("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::runtime_error("add: size mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::runtime_error("sub: size mismatch");
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec scale(const Rat& c, const RatVec& a) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace qgl
