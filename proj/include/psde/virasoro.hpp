#ifndef PSDE_VIRASORO_HPP
#define PSDE_VIRASORO_HPP

#include <string>
#include <vector>

#include "psde/generators.hpp"

namespace psde {

// d_n = -t^{n+1} L
DiffOperator virasoro_d(long n);

struct VirasoroReport {
  int witt_pairs = 0;       // pairs checked against [d_m, d_n] = (m-n) d_{m+n}
  bool witt_ok = false;
  bool sl2_realization_ok = false;  // the (L, tL, t^2 L) triple
  bool ladder_ok = false;           // [t^m L, K] families, K- = A1, K0 = A2/2, K+ = A3
  std::vector<std::string> failures;
};

VirasoroReport virasoro_check(long m_range = 6, long ladder_range = 3);

} // namespace psde

#endif
