#ifndef PSDE_TEST_UTIL_HPP
#define PSDE_TEST_UTIL_HPP

#include <cstdint>

#include "psde/scalar.hpp"

namespace psde::testutil {

// deterministic splitmix64 for reproducible property tests
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  Rat rational(long maxabs = 6, long maxden = 4) {
    long num = range(-maxabs, maxabs);
    long den = range(1, maxden);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat nonzero_rational(long maxabs = 6, long maxden = 4) {
    Rat r = rational(maxabs, maxden);
    return r == 0 ? Rat(1, 2) : r;
  }
};

// random canonical expression: a few terms with small degrees, shifts from a
// fixed pool so products create genuine pole collisions; descending radicals
// appear occasionally (at positive roots, where their windows are real)
inline ScalarExpr random_expr(Rng& rng, int max_terms = 3, bool allow_half = true) {
  static const Rat roots[] = {Rat(0), Rat(-1), Rat(1), Rat(-2)};
  ScalarExpr out;
  int terms = static_cast<int>(rng.range(1, max_terms));
  for (int i = 0; i < terms; ++i) {
    std::vector<std::tuple<Rat, Rat, bool>> factors;
    // one orientation per root: descending halves live at root 2 only, so
    // products never mix sqrt(t-r) with sqrt(r-t)
    bool desc = allow_half && rng.range(0, 7) == 0;
    Rat root = desc ? Rat(2) : roots[rng.range(0, 3)];
    long e2 = rng.range(-4, 4);  // exponent in halves or integers
    Rat e = allow_half ? Rat(e2, 2) : Rat(e2);
    e.canonicalize();
    if (e != 0) factors.push_back({root, e, desc});
    out += ScalarExpr::term(Coeff(rng.nonzero_rational()), Rat(0),
                            static_cast<unsigned>(rng.range(0, 2)),
                            static_cast<unsigned>(rng.range(0, 2)), factors);
  }
  return out;
}

} // namespace psde::testutil

#endif
