#include <doctest.h>

#include "psde/lie_table.hpp"
#include "psde/virasoro.hpp"

using namespace psde;

namespace {
ScalarExpr tpow(long n) { return ScalarExpr::linear_power(Rat(0), Rat(n)); }
} // namespace

TEST_CASE("Virasoro relations of -t^{n+1} L") {
  CHECK(op_commutator(virasoro_d(1), virasoro_d(-1)) == Rat(2) * virasoro_d(0));
  DiffOperator L = build_psde_L();
  CHECK(op_commutator(tpow(1) * L, tpow(2) * L) == tpow(2) * L);
  // [t^3 L, K0] with the normalized K0 = A2/2
  DiffOperator K0 = Rat(1, 2) * make_generator_A(2);
  CHECK(op_commutator(tpow(3) * L, K0) == Rat(-2) * (tpow(3) * L));

  VirasoroReport rep = virasoro_check(4, 3);
  CHECK(rep.witt_ok);
  CHECK(rep.sl2_realization_ok);
  CHECK(rep.ladder_ok);
  CHECK(rep.witt_pairs == 81);
  CHECK(rep.failures.empty());
}

TEST_CASE("orthogonal structure constants") {
  LieAlgebraTable so31 = orthogonal_table({1, -1, -1, -1});
  CHECK(so31.dim() == 6);
  CHECK(so31.antisymmetry_ok());
  CHECK(so31.jacobi_ok());
  // basis order [J12, J13, J14, J23, J24, J34]
  // [J12, J13] = -g11 J23 = -J23
  for (int k = 0; k < 6; ++k)
    CHECK(so31.c(0, 1, k) == GammaPoly(Rat(k == 3 ? -1 : 0)));
  // [J12, J34] = 0 (disjoint index pairs)
  for (int k = 0; k < 6; ++k) CHECK(so31.c(0, 5, k).is_zero());
  CHECK_THROWS_AS(orthogonal_table({1, 0, -1, -1}), DegenerateMetric);

  // so(1,1) in two dimensions is abelian: single generator
  LieAlgebraTable so11 = orthogonal_table({1, -1});
  CHECK(so11.dim() == 1);
}

TEST_CASE("contraction of so(3,1)") {
  LieAlgebraTable so31 = orthogonal_table({1, -1, -1, -1});
  // rescaled basis (J, D1+, D1-, D2+, D2-, C) = (J12, g J13, g J14, g J23, g J24, g^2 J34)
  const std::vector<long> powers = {0, 1, 1, 1, 1, 2};
  LieAlgebraTable scaled = contract(so31, powers);
  CHECK(scaled.antisymmetry_ok());
  CHECK(scaled.jacobi_ok());

  // all structure constants stay polynomial in gamma
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        if (!scaled.c(i, j, k).is_zero()) CHECK(scaled.c(i, j, k).min_degree() >= 0);

  // [D1+, D2+] = g^2 J at finite gamma, 0 in the limit
  CHECK(scaled.c(1, 3, 0) == GammaPoly::gamma_power(2));
  // [D1-, D1+] = C for every gamma
  CHECK(scaled.c(2, 1, 5) == GammaPoly(Rat(1)));

  LieAlgebraTable lim = contraction_limit(scaled);
  CHECK(lim.jacobi_ok());

  // expected limit: the ideal relations of the symmetry algebra under
  // J -> A4, D1+ -> A5, D1- -> A7, D2+ -> A8, D2- -> A6, C -> 2
  LieAlgebraTable expected({"J", "D1+", "D1-", "D2+", "D2-", "C"});
  auto basis_vec = [&](int k, const Rat& v) {
    std::vector<GammaPoly> out(6);
    out[k] = GammaPoly(v);
    return out;
  };
  std::vector<GammaPoly> zero(6);
  expected.set_bracket(0, 1, basis_vec(3, Rat(-1)), GammaPoly());  // [J, D1+] = -D2+
  expected.set_bracket(0, 2, basis_vec(4, Rat(-1)), GammaPoly());  // [J, D1-] = -D2-
  expected.set_bracket(0, 3, basis_vec(1, Rat(-1)), GammaPoly());  // [J, D2+] = -D1+
  expected.set_bracket(0, 4, basis_vec(2, Rat(-1)), GammaPoly());  // [J, D2-] = -D1-
  expected.set_bracket(0, 5, zero, GammaPoly());
  expected.set_bracket(1, 2, basis_vec(5, Rat(-1)), GammaPoly());  // [D1+, D1-] = -C
  expected.set_bracket(1, 3, zero, GammaPoly());
  expected.set_bracket(1, 4, zero, GammaPoly());
  expected.set_bracket(1, 5, zero, GammaPoly());
  expected.set_bracket(2, 3, zero, GammaPoly());
  expected.set_bracket(2, 4, zero, GammaPoly());
  expected.set_bracket(2, 5, zero, GammaPoly());
  expected.set_bracket(3, 4, basis_vec(5, Rat(1)), GammaPoly());   // [D2+, D2-] = C
  expected.set_bracket(3, 5, zero, GammaPoly());
  expected.set_bracket(4, 5, zero, GammaPoly());
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) CHECK(lim.c(i, j, k) == expected.c(i, j, k));

  // cross-check the limit against the operator algebra itself
  std::vector<DiffOperator> ops = {make_generator_A(4),          make_generator_A(5),
                                   make_generator_A(7),          make_generator_A(8),
                                   make_generator_A(6),          Rat(2) * make_generator_A(9)};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      DiffOperator want;
      for (int k = 0; k < 6; ++k) want += lim.c(i, j, k).constant_term() * ops[k];
      CHECK(op_commutator(ops[i], ops[j]) == want);
    }

  SUBCASE("singular rescale is rejected") {
    CHECK_THROWS_AS(contraction_limit(contract(so31, {0, 0, 0, 0, 0, 2})), SingularContraction);
  }
  SUBCASE("Jacobi survives at sampled gamma values") {
    // evaluate the gamma-polynomials at rational points by reusing contract
    // with shifted powers; jacobi_ok on the scaled table covers all gamma
    CHECK(scaled.jacobi_ok());
  }
}
