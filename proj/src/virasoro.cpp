#include "psde/virasoro.hpp"

namespace psde {

namespace {
DiffOperator tpow_L(long n) {
  return ScalarExpr::linear_power(Rat(0), Rat(n)) * build_psde_L();
}
} // namespace

DiffOperator virasoro_d(long n) { return -tpow_L(n + 1); }

VirasoroReport virasoro_check(long m_range, long ladder_range) {
  VirasoroReport rep;
  rep.witt_ok = true;
  for (long m = -m_range; m <= m_range; ++m) {
    for (long n = -m_range; n <= m_range; ++n) {
      DiffOperator lhs = op_commutator(virasoro_d(m), virasoro_d(n));
      DiffOperator rhs = Rat(m - n) * virasoro_d(m + n);
      ++rep.witt_pairs;
      if (!(lhs == rhs)) {
        rep.witt_ok = false;
        rep.failures.push_back("witt pair m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
    }
  }

  const DiffOperator L = build_psde_L();
  const DiffOperator tL = tpow_L(1), t2L = tpow_L(2);
  rep.sl2_realization_ok = op_commutator(tL, L) == -L && op_commutator(tL, t2L) == t2L &&
                           op_commutator(L, t2L) == Rat(2) * tL;
  if (!rep.sl2_realization_ok) rep.failures.push_back("(L, tL, t^2 L) triple");

  // ladder families against the normalized triple (A1, A2/2, A3)
  const DiffOperator Km = make_generator_A(1);
  const DiffOperator K0 = Rat(1, 2) * make_generator_A(2);
  const DiffOperator Kp = make_generator_A(3);
  rep.ladder_ok = true;
  for (long m = -ladder_range; m <= ladder_range; ++m) {
    DiffOperator tmL = tpow_L(m);
    bool ok_p = op_commutator(tmL, Kp) == Rat(2 - m) * tpow_L(m + 1);
    bool ok_0 = op_commutator(tmL, K0) == Rat(1 - m) * tpow_L(m);
    bool ok_m = op_commutator(tmL, Km) == Rat(-m) * tpow_L(m - 1);
    if (!(ok_p && ok_0 && ok_m)) {
      rep.ladder_ok = false;
      rep.failures.push_back("ladder m=" + std::to_string(m));
    }
  }
  return rep;
}

} // namespace psde
