#include <doctest.h>

#include <cmath>

#include "psde/flows.hpp"
#include "psde/numeric.hpp"

using namespace psde;

TEST_CASE("quadrature reaches tolerance on Gaussians") {
  const long wp = 192;
  Func1 g = [&](const BigFloat& v) { return exp(-(v * v)); };
  QuadResult q = quadrature(g, BigFloat(-14.0, wp), BigFloat(14.0, wp), 1e-13, wp);
  double spi = sqrt(BigFloat::pi(wp)).to_double();
  CHECK(std::abs(q.value.to_double() - spi) < 1e-12);
  CHECK_THROWS_AS(
      quadrature([&](const BigFloat& v) { return exp(v * v); },  // wildly oscillating scale
                 BigFloat(-30.0, wp), BigFloat(30.0, wp), 1e-30, wp),
      NonConvergent);
}

TEST_CASE("kernel normalization masses") {
  const long wp = 192;
  GaussianExpr Kx = kernel(KernelKind::x_side, Rat(0), Rat(0), Rat(0), Rat(1));
  for (double t : {0.25, 1.0, 4.0}) {
    BigFloat bt(t, wp), zero(0.0, wp);
    Func1 f = [&](const BigFloat& v) { return Kx.eval(v, zero, bt, wp); };
    double w = 14.0 * std::sqrt(t);
    QuadResult q = quadrature(f, BigFloat(-w, wp), BigFloat(w, wp), 1e-13, wp);
    CHECK(std::abs(q.value.to_double() - 1.0) < 1e-12);
  }
  GaussianExpr Kp = kernel(KernelKind::p_side, Rat(0), Rat(0), Rat(0), Rat(1));
  for (double t : {0.25, 0.5, 0.9}) {
    BigFloat bt(t, wp), zero(0.0, wp);
    Func1 f = [&](const BigFloat& v) { return Kp.eval(zero, v, bt, wp); };
    double w = 14.0 * std::sqrt(1.0 / t - 1.0);
    QuadResult q = quadrature(f, BigFloat(-w, wp), BigFloat(w, wp), 1e-13, wp);
    CHECK(std::abs(q.value.to_double() - 1.0) < 1e-12);
  }
}

TEST_CASE("finite-difference residuals converge at second order") {
  GridSpec grid;
  grid.x_lo = -0.5;
  grid.x_hi = 0.5;
  grid.p_lo = -0.5;
  grid.p_hi = 0.5;
  grid.t_lo = 0.75;
  grid.t_hi = 1.5;
  grid.nx = grid.np = grid.nt = 3;
  GaussianExpr K = kernel(KernelKind::two_sided, Rat(0), Rat(0), Rat(0), Rat(2));
  Func3 fk = [&](const BigFloat& x, const BigFloat& p, const BigFloat& t) {
    return K.eval(x, p, t, 160);
  };
  ResidualReport rep = fd_residual(fk, grid, 3);
  CHECK(rep.order_estimate == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rep.by_level.back() < rep.by_level.front());

  // thermal state too: exact-vs-numeric coherence
  GaussianExpr th = thermal(Rat(1));
  Func3 ft = [&](const BigFloat& x, const BigFloat& p, const BigFloat& t) {
    return th.eval(x, p, t, 160);
  };
  ResidualReport rept = fd_residual(ft, grid, 3);
  CHECK(rept.order_estimate > 1.7);

  // L x = 0 exactly, so the residual is pure truncation noise
  Func3 fx = [](const BigFloat& x, const BigFloat&, const BigFloat&) { return x; };
  ResidualReport repx = fd_residual(fx, grid, 2);
  CHECK(repx.max_residual < 1e-20);

  // L x^2 = -1/2 everywhere
  Func3 fx2 = [](const BigFloat& x, const BigFloat&, const BigFloat&) { return x * x; };
  ResidualReport repx2 = fd_residual(fx2, grid, 2);
  CHECK(std::abs(repx2.max_residual - 0.5) < 1e-10);

  Func3 bad = [](const BigFloat&, const BigFloat&, const BigFloat&) -> BigFloat {
    throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(fd_residual(bad, grid, 1), EvaluationFailure);
}

TEST_CASE("group-transformed solutions pass the black-box residual check") {
  // a pseudo-rotated thermal state, fed to the stencil as a plain function
  GaussianExpr moved = apply_group(make_group_action_hyperbolic(Rat(5, 4), Rat(3, 4)),
                                   thermal(Rat(2)));
  REQUIRE(op_apply(build_psde_L(), moved).is_zero());
  GridSpec grid;
  grid.x_lo = -0.4;
  grid.x_hi = 0.4;
  grid.p_lo = -0.4;
  grid.p_hi = 0.4;
  grid.t_lo = 0.8;
  grid.t_hi = 1.25;
  grid.nx = grid.np = grid.nt = 3;
  Func3 f = [&](const BigFloat& x, const BigFloat& p, const BigFloat& t) {
    return moved.eval(x, p, t, 160);
  };
  ResidualReport rep = fd_residual(f, grid, 3);
  CHECK(rep.order_estimate > 1.7);
  CHECK(rep.by_level.back() < 1e-3);
}

TEST_CASE("delta sequence limits") {
  const std::vector<double> eps = {1e-1, 1e-2, 1e-3};
  for (auto side : {KernelKind::x_side, KernelKind::p_side}) {
    for (auto phi : {TestFunction::gauss, TestFunction::lorentz, TestFunction::cosine}) {
      auto rows = delta_limit_test(side, phi, eps);
      REQUIRE(rows.size() == 3);
      for (size_t i = 0; i + 1 < rows.size(); ++i) {
        double ratio = rows[i + 1].error / rows[i].error;
        CHECK(ratio > 0.05);
        CHECK(ratio < 0.2);
      }
    }
  }
  // constant test function integrates to one for every eps (normalization)
  auto rows = delta_limit_test(KernelKind::x_side, TestFunction::cosine, {1e-2});
  CHECK(rows[0].integral < 1.0);  // cos(0) = 1 minus curvature loss
}

TEST_CASE("integral invariance") {
  for (Rat g : {Rat(1), Rat(1, 2)}) {
    InvarianceReport rep = integral_invariance(g, {Rat(1, 4), Rat(1), Rat(4)});
    CHECK(rep.pass);
    CHECK(rep.max_error < 1e-10);
    CHECK(rep.max_spread < 1e-10);
    double want = std::sqrt(M_PI / to_double(g));
    CHECK(rep.reference == doctest::Approx(want).epsilon(1e-12));
  }
  // at gamma = 1 the reference is sqrt(pi) itself
  InvarianceReport rep1 = integral_invariance(Rat(1), {Rat(1)});
  CHECK(rep1.reference == doctest::Approx(1.7724538509).epsilon(1e-9));
  CHECK_THROWS_AS(integral_invariance(Rat(-1), {Rat(1)}), InvalidParameter);
}
