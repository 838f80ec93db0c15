#include <doctest.h>

#include "psde/gaussian.hpp"
#include "psde/generators.hpp"
#include "test_util.hpp"

using namespace psde;
using testutil::Rng;

namespace {
ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }
} // namespace

TEST_CASE("composition expands by the Leibniz rule") {
  CHECK(DiffOperator::derivative(Var::x) * DiffOperator::scalar(X()) ==
        DiffOperator::term(X(), 0, 1, 0) + DiffOperator::identity());
  // Dx^2 o f = f Dx^2 + 2 f_x Dx + f_xx, checked through an image of psi = x^3
  ScalarExpr f = X() * X();
  DiffOperator lhs = DiffOperator::derivative(Var::x, 2) * DiffOperator::scalar(f);
  DiffOperator rhs = DiffOperator::term(f, 0, 2, 0) +
                     DiffOperator::term(Rat(2) * f.diff(Var::x), 0, 1, 0) +
                     DiffOperator::scalar(f.diff(Var::x).diff(Var::x));
  CHECK(lhs == rhs);
  ScalarExpr psi = pow(X(), 3);
  CHECK(lhs.apply(psi) == rhs.apply(psi));
  // [L, t] = 1
  CHECK(op_commutator(build_psde_L(), DiffOperator::scalar(T())) == DiffOperator::identity());
}

TEST_CASE("the pseudo-diffusion operator") {
  DiffOperator L = build_psde_L();
  CHECK(L.apply(ScalarExpr(1)).is_zero());
  CHECK(L.apply(X() * X() + T()) == ScalarExpr(Rat(1, 2)));
  CHECK(L.apply(Rat(4) * (X() * X()) + Rat(2) * T()).is_zero());
  CHECK(L.apply(P() * P() + Rat(1, 2) * ScalarExpr::linear_power(Rat(0), Rat(-1))).is_zero());
}

TEST_CASE("generalized operator construction") {
  DiffOperator std_op = build_general_L(ScalarExpr(1), ScalarExpr(-1));
  CHECK(std_op == DiffOperator::derivative(Var::t) - DiffOperator::derivative(Var::x, 2) +
                      DiffOperator::derivative(Var::p, 2));
  DiffOperator unscaled = build_general_L(ScalarExpr(1), -ScalarExpr::linear_power(Rat(0), Rat(-2)));
  CHECK(unscaled ==
        DiffOperator::derivative(Var::t) - DiffOperator::derivative(Var::x, 2) +
            ScalarExpr::linear_power(Rat(0), Rat(-2)) * DiffOperator::derivative(Var::p, 2));
  CHECK(build_general_L(ScalarExpr(Rat(1, 4)),
                        Rat(-1, 4) * ScalarExpr::linear_power(Rat(0), Rat(-2))) == build_psde_L());
  CHECK_THROWS_AS(build_general_L(X(), ScalarExpr(1)), InvalidCoefficient);
  // orientation flag round trip
  GeneralizedL g{ScalarExpr(Rat(1, 4)), Rat(1, 4) * ScalarExpr::linear_power(Rat(0), Rat(-2)),
                 GeneralizedL::Convention::plus_dp2};
  CHECK(g.to_operator() == build_psde_L());
}

TEST_CASE("application to exponential forms") {
  DiffOperator Dx = DiffOperator::derivative(Var::x);
  GaussianExpr e = GaussianExpr::exp_of(Rat(2) * X() + T());  // lambda = 1
  CHECK(op_apply(Dx, e) == Rat(2) * e);
  GaussianExpr psi = GaussianExpr::make(X() * P() + ScalarExpr(1), -(X() * X()) * T());
  CHECK(op_apply(DiffOperator::identity(), psi) == psi);
}

TEST_CASE("heat kernel annihilation") {
  ScalarExpr pre = ScalarExpr::pi_power(Rat(-1, 2)) * ScalarExpr::linear_power(Rat(0), Rat(-1, 2));
  ScalarExpr arg = -(X() * X()) * ScalarExpr::linear_power(Rat(0), Rat(-1));
  GaussianExpr K = GaussianExpr::make(pre, arg);
  CHECK(op_apply(build_psde_L(), K).is_zero());
}

TEST_CASE("associativity on random second-order operators") {
  Rng rng(99);
  auto random_op = [&](int max_terms) {
    DiffOperator P;
    int terms = static_cast<int>(rng.range(1, max_terms));
    for (int i = 0; i < terms; ++i) {
      unsigned dt = static_cast<unsigned>(rng.range(0, 1));
      unsigned dx = static_cast<unsigned>(rng.range(0, 2));
      unsigned dp = static_cast<unsigned>(rng.range(0, 2 - (dx > 1 ? 1 : 0)));
      P += DiffOperator::term(testutil::random_expr(rng, 2, false), dt, dx, dp);
    }
    return P;
  };
  for (int i = 0; i < 40; ++i) {
    DiffOperator A = random_op(2), B = random_op(2), C = random_op(2);
    CHECK((A * B) * C == A * (B * C));
  }
}

TEST_CASE("Jacobi identity on symmetry generators") {
  Rng rng(100);
  std::vector<DiffOperator> A;
  for (int i = 1; i <= 9; ++i) A.push_back(make_generator_A(i));
  for (int trial = 0; trial < 30; ++trial) {
    const DiffOperator& p = A[rng.range(0, 8)];
    const DiffOperator& q = A[rng.range(0, 8)];
    const DiffOperator& r = A[rng.range(0, 8)];
    DiffOperator jac = op_commutator(p, op_commutator(q, r)) +
                       op_commutator(q, op_commutator(r, p)) +
                       op_commutator(r, op_commutator(p, q));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("apply and compose cohere on exponential forms") {
  Rng rng(101);
  GaussianExpr psi = GaussianExpr::make(X() + P() * T(), Rat(1, 3) * (X() * P()) - T() * (P() * P()));
  for (int i = 1; i <= 9; ++i) {
    for (int j = 1; j <= 9; ++j) {
      if ((i + j) % 3 != 0) continue;  // a deterministic subsample
      DiffOperator Pi = make_generator_A(i), Pj = make_generator_A(j);
      CHECK(op_apply(Pi * Pj, psi) == op_apply(Pi, op_apply(Pj, psi)));
    }
  }
}

TEST_CASE("commutators with powers of t") {
  DiffOperator L = build_psde_L();
  for (long n : {-2L, -1L, 1L, 2L, 3L}) {
    DiffOperator tn = DiffOperator::scalar(ScalarExpr::linear_power(Rat(0), Rat(n)));
    CHECK(op_commutator(L, tn) ==
          DiffOperator::scalar(Rat(n) * ScalarExpr::linear_power(Rat(0), Rat(n - 1))));
  }
}

TEST_CASE("operator serialization is deterministic") {
  DiffOperator L = build_psde_L();
  CHECK(L.str() == build_psde_L().str());
  CHECK(L.str().find("Dt") != std::string::npos);
  CHECK(L.str().find("Dx^2") != std::string::npos);
  CHECK(L.str().find("Dp^2") != std::string::npos);
}
