#include <doctest.h>

#include "fixtures.hpp"
#include "psde/generators.hpp"
#include "psde/forms.hpp"
#include "psde/lie_table.hpp"
#include "test_util.hpp"

using namespace psde;
using testutil::Rng;
using psde::fixtures::BracketEntry;

namespace {
ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }
ScalarExpr tp(const Rat& root, const Rat& e) { return ScalarExpr::linear_power(root, e); }

void check_against(const LieAlgebraTable& tab, const BracketEntry* fixture, size_t count) {
  std::vector<std::vector<long>> want(9, std::vector<long>(9 * 9, 0));
  for (size_t e = 0; e < count; ++e) {
    const BracketEntry& en = fixture[e];
    want[en.i - 1][(en.j - 1) * 9 + (en.k - 1)] = en.v;
  }
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      for (int k = 0; k < 9; ++k) {
        long w = i < j ? want[i][j * 9 + k] : -want[j][i * 9 + k];
        CHECK(tab.c(i, j, k) == GammaPoly(Rat(w)));
      }
}

} // namespace

TEST_CASE("generator definitions") {
  CHECK(make_generator_A(3) == DiffOperator::term(T() * T(), 1, 0, 0) +
                                   DiffOperator::term(T() * X(), 0, 1, 0) +
                                   DiffOperator::scalar(X() * X() + Rat(1, 2) * T()));
  CHECK(make_generator_A(7) == DiffOperator::derivative(Var::x));
  CHECK(make_generator_A(1) ==
        DiffOperator::derivative(Var::t) - DiffOperator::term(P() * tp(Rat(0), Rat(-1)), 0, 0, 1) -
            DiffOperator::scalar(P() * P() + Rat(1, 2) * tp(Rat(0), Rat(-1))));
  VectorField x1 = make_generator_X(1);
  CHECK(x1.alpha == ScalarExpr(1));
  CHECK(x1.beta.is_zero());
  CHECK(x1.gamma == -(P() * tp(Rat(0), Rat(-1))));
  CHECK(x1.eta == P() * P() + Rat(1, 2) * tp(Rat(0), Rat(-1)));
  VectorField x9 = make_generator_X(9);
  CHECK(x9.eta == ScalarExpr(1));
  VectorField x5 = make_generator_X(5);
  CHECK(x5.beta == T());
  CHECK(x5.eta == Rat(-2) * X());
  CHECK_THROWS_AS(make_generator_X(0), IndexOutOfRange);
  CHECK_THROWS_AS(make_generator_A(10), IndexOutOfRange);
}

TEST_CASE("field to operator rule and the sign vector") {
  CHECK(vf_to_operator(make_generator_X(7)) == DiffOperator::derivative(Var::x));
  // the i = 6, 9 entries carry the recorded sign flip
  CHECK(vf_to_operator(make_generator_X(9)) == -DiffOperator::identity());
  CHECK(make_generator_A(9) == DiffOperator::identity());
  CHECK(vf_to_operator(make_generator_X(6)) == -make_generator_A(6));
  CHECK(make_generator_A(6) ==
        DiffOperator::term(tp(Rat(0), Rat(-1)), 0, 0, 1) + DiffOperator::scalar(Rat(2) * P()));
  for (int i = 1; i <= 9; ++i)
    CHECK(make_generator_A(i) == Rat(xa_sign(i)) * vf_to_operator(make_generator_X(i)));
}

TEST_CASE("symmetry criterion") {
  DiffOperator L = build_psde_L();
  for (int i = 1; i <= 9; ++i) {
    auto xi = check_symmetry(L, make_generator_A(i));
    REQUIRE(xi);
    if (i == 2) CHECK(*xi == ScalarExpr(2));
    else if (i == 3) CHECK(*xi == Rat(2) * T());
    else CHECK(xi->is_zero());
  }
  // a non-symmetry has no xi
  CHECK(!check_symmetry(L, DiffOperator::term(P(), 0, 1, 0)));
  CHECK_THROWS_AS(check_symmetry(L, DiffOperator::derivative(Var::x, 2)), std::invalid_argument);
}

TEST_CASE("determining equations") {
  for (int i = 1; i <= 9; ++i) CHECK(check_determining_equations(make_generator_X(i)).pass);
  VectorField bad;
  bad.beta = P();
  DeterminingReport rep = check_determining_equations(bad);
  CHECK(!rep.pass);
  CHECK(rep.residuals[0] == ScalarExpr(-1));  // t^2 gamma_x - beta_p = -1

  std::array<Rat, 9> e3{};
  e3[2] = 1;
  CHECK(general_symmetry_family(e3) == make_generator_X(3));
  std::array<Rat, 9> zero{};
  VectorField z = general_symmetry_family(zero);
  CHECK((z.alpha.is_zero() && z.beta.is_zero() && z.gamma.is_zero() && z.eta.is_zero()));

  Rng rng(2024);
  for (int trial = 0; trial < 8; ++trial) {
    std::array<Rat, 9> c{};
    for (auto& v : c) v = rng.rational(9, 5);
    CHECK(check_determining_equations(general_symmetry_family(c)).pass);
  }

  SUBCASE("unit vectors reproduce the basis fields up to the sign vector") {
    for (int i = 1; i <= 9; ++i) {
      std::array<Rat, 9> e{};
      e[i - 1] = 1;
      VectorField got = general_symmetry_family(e);
      VectorField want = make_generator_X(i);
      Rat s(xa_sign(i));
      CHECK(got.alpha == s * want.alpha);
      CHECK(got.beta == s * want.beta);
      CHECK(got.gamma == s * want.gamma);
      CHECK(got.eta == s * want.eta);
    }
  }

  SUBCASE("the multiplication part is a combination of heat-polynomial solutions") {
    // -eta = (1/4)[c3 v2(2x,t) - c1 v2(2p,1/t)] + (c4/2) v1(2x) v1(2p)
    //        + c5 v1(2x) + c6 v1(2p) + c9
    Rng rng2(77);
    ScalarExpr v2x = heat_polynomial(2, true);
    ScalarExpr v2p_dual = Rat(4) * (P() * P()) + Rat(2) * tp(Rat(0), Rat(-1));
    ScalarExpr v1x = Rat(2) * X(), v1p = Rat(2) * P();
    for (int trial = 0; trial < 6; ++trial) {
      std::array<Rat, 9> c{};
      for (auto& v : c) v = rng2.rational(6, 3);
      ScalarExpr eta_mult = Rat(1, 4) * (c[2] * v2x - c[0] * v2p_dual) +
                            Rat(1, 2) * (c[3] * (v1x * v1p)) + c[4] * v1x + c[5] * v1p +
                            ScalarExpr(c[8]);
      CHECK(-general_symmetry_family(c).eta == eta_mult);
      // and each building block solves the equation
      CHECK(build_psde_L().apply(eta_mult).is_zero());
    }
  }
}

TEST_CASE("commutator tables match the fixtures") {
  std::vector<DiffOperator> A, Xf;
  std::vector<std::string> an, xn;
  for (int i = 1; i <= 9; ++i) {
    A.push_back(make_generator_A(i));
    Xf.push_back(vf_realization(make_generator_X(i)));
    an.push_back("A" + std::to_string(i));
    xn.push_back("X" + std::to_string(i));
  }
  LieAlgebraTable atab = commutator_table(A, an);
  LieAlgebraTable xtab = commutator_table(Xf, xn);
  CHECK(atab.antisymmetry_ok());
  CHECK(atab.jacobi_ok());
  CHECK(xtab.jacobi_ok());
  check_against(atab, fixtures::kATable, fixtures::kATableSize);
  check_against(xtab, fixtures::kXTable, fixtures::kXTableSize);

  SUBCASE("bracket leaving the span is reported") {
    std::vector<DiffOperator> small = {make_generator_A(1), make_generator_A(3)};
    CHECK_THROWS_AS(commutator_table(small, {"A1", "A3"}), BasisNotClosed);
  }
}

TEST_CASE("structure analysis") {
  std::vector<DiffOperator> A;
  std::vector<std::string> an;
  for (int i = 1; i <= 9; ++i) {
    A.push_back(make_generator_A(i));
    an.push_back("A" + std::to_string(i));
  }
  StructureReport rep = analyze_structure(commutator_table(A, an));
  REQUIRE(rep.sl2);
  CHECK((*rep.sl2)[0] == 0);  // A1 = K-
  CHECK((*rep.sl2)[1] == 1);  // A2 = K0
  CHECK((*rep.sl2)[2] == 2);  // A3 = K+
  CHECK(rep.commuting_with_sl2 == std::vector<int>{3});
  CHECK(rep.heisenberg_ideal);
  CHECK(rep.heisenberg_indices == std::vector<int>{4, 5, 6, 7, 8});
  REQUIRE(rep.center.size() == 1);
  for (int k = 0; k < 8; ++k) CHECK(rep.center[0][k] == 0);
  CHECK(rep.center[0][8] == 1);  // A9 spans the center
  CHECK(rep.levi_label == "sl(2,R) (+) so(1,1) |x h2");

  SUBCASE("five-field Heisenberg table") {
    // constant-coefficient wing: fields for b = 1
    std::vector<DiffOperator> H;
    VectorField f1, f2, f3, f4, f5;
    f1.beta = T();
    f1.eta = Rat(-1, 2) * X();
    f2.beta = ScalarExpr(1);
    f3.gamma = T();
    f3.eta = Rat(-1, 2) * P();
    f4.gamma = ScalarExpr(1);
    f5.eta = ScalarExpr(1);
    for (auto& f : {f1, f2, f3, f4, f5}) H.push_back(vf_realization(f));
    StructureReport hr = analyze_structure(commutator_table(H, {"Y1", "Y2", "Y3", "Y4", "Y5"}));
    CHECK(!hr.sl2);
    CHECK(hr.heisenberg_ideal);
    CHECK(hr.levi_label == "h2 (5-dim Heisenberg)");
  }
  SUBCASE("abelian table") {
    std::vector<DiffOperator> ab = {DiffOperator::derivative(Var::x),
                                    DiffOperator::derivative(Var::p),
                                    DiffOperator::derivative(Var::t)};
    StructureReport ar = analyze_structure(commutator_table(ab, {"e1", "e2", "e3"}));
    CHECK(ar.center.size() == 3);
    CHECK(!ar.sl2);
    CHECK(ar.levi_label == "abelian");
  }
}

TEST_CASE("exchange involution") {
  DiffOperator L = build_psde_L();
  CHECK(exchange_involution(L) == -((T() * T()) * L));
  CHECK(exchange_involution(make_generator_A(3)) == -make_generator_A(1));
  CHECK(exchange_involution(make_generator_A(1)) == -make_generator_A(3));
  CHECK(exchange_involution(make_generator_A(2)) == -make_generator_A(2));
  CHECK(exchange_involution(make_generator_A(4)) == make_generator_A(4));
  CHECK(exchange_involution(make_generator_A(5)) == make_generator_A(6));
  CHECK(exchange_involution(make_generator_A(7)) == make_generator_A(8));
  for (int i = 1; i <= 9; ++i) {
    DiffOperator Ai = make_generator_A(i);
    CHECK(exchange_involution(exchange_involution(Ai)) == Ai);
  }
}
