#ifndef PSDE_NUMBERS_HPP
#define PSDE_NUMBERS_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <utility>

namespace psde {

using Int = mpz_class;
using Rat = mpq_class;

// the two-argument mpq_class constructor does not reduce; route raw pairs
// through here so the gcd/denominator invariants hold
inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat canonical(Rat r) {
  r.canonicalize();
  return r;
}

// denominator must be 1 or 2 everywhere exponents appear
inline bool is_integer(const Rat& e) { return e.get_den() == 1; }
inline bool is_half(const Rat& e) { return e.get_den() == 2; }

inline long to_long(const Rat& e) {
  if (!is_integer(e)) throw std::invalid_argument("expected integer rational");
  if (!e.get_num().fits_slong_p()) throw std::overflow_error("rational exponent out of range");
  return e.get_num().get_si();
}

// floor(e) for a rational with denominator 1 or 2
inline long floor_half(const Rat& e) {
  Int n = e.get_num(), d = e.get_den();
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("exponent out of range");
  return q.get_si();
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
  if (inv) {
    if (b == 0) throw std::domain_error("zero to negative power");
    b = Rat(base.get_den(), base.get_num());
    b.canonicalize();
  }
  Rat out(1);
  Rat acc = b;
  while (n) {
    if (n & 1ul) out *= acc;
    acc *= acc;
    n >>= 1;
  }
  return out;
}

inline Int factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

inline Int binomial(unsigned n, unsigned k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// n = s^2 * f with f squarefree (trial division; inputs here are small)
std::pair<Int, Int> sqrt_reduce(const Int& n);

// Exact coefficient q * sqrt(m), m squarefree positive; q == 0 implies m == 1.
struct Coeff {
  Rat q;
  Int m;

  Coeff() : q(0), m(1) {}
  Coeff(Rat v) : q(std::move(v)), m(1) { q.canonicalize(); }
  Coeff(Rat v, Int rad) : q(std::move(v)), m(std::move(rad)) {
    q.canonicalize();
    if (q == 0) m = 1;
  }

  bool is_zero() const { return q == 0; }
  bool is_rational() const { return m == 1; }

  Coeff operator-() const { return Coeff(-q, m); }

  // sqrt(m1)*sqrt(m2) = g*sqrt((m1/g)(m2/g)) with g = gcd(m1,m2)
  friend Coeff operator*(const Coeff& a, const Coeff& b) {
    if (a.q == 0 || b.q == 0) return Coeff();
    Int g;
    mpz_gcd(g.get_mpz_t(), a.m.get_mpz_t(), b.m.get_mpz_t());
    return Coeff(a.q * b.q * Rat(g), (a.m / g) * (b.m / g));
  }

  friend bool operator==(const Coeff& a, const Coeff& b) { return a.q == b.q && a.m == b.m; }
};

// sqrt of a positive rational as a Coeff
Coeff coeff_sqrt(const Rat& r);

// r^e with e of denominator 1 or 2; r must be > 0 when e is half-integer
Coeff coeff_pow(const Rat& r, const Rat& e);

double to_double(const Rat& r);

std::string rat_to_string(const Rat& r);
Rat parse_rational(const std::string& s);

} // namespace psde

#endif
