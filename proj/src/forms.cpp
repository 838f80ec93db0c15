#include "psde/forms.hpp"

#include <cmath>

#include "psde/generators.hpp"

namespace psde {

namespace {
ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }
constexpr unsigned kMaxDegree = 64;
} // namespace

ScalarExpr heat_polynomial(unsigned n, bool scaled) {
  if (n > kMaxDegree) throw InvalidParameter("heat polynomial degree exceeds bound");
  ScalarExpr out;
  for (unsigned k = 0; 2 * k <= n; ++k) {
    unsigned xp = n - 2 * k;
    Rat c = Rat(factorial(n)) / Rat(factorial(xp) * factorial(k));
    if (scaled) c *= rat_pow(Rat(2), xp);
    out += ScalarExpr::term(Coeff(c), Rat(0), xp, 0, {{Rat(0), Rat(k), false}});
  }
  return out;
}

ScalarExpr hermite(unsigned n) {
  if (n > kMaxDegree) throw InvalidParameter("hermite degree exceeds bound");
  ScalarExpr out;
  for (unsigned k = 0; 2 * k <= n; ++k) {
    unsigned xp = n - 2 * k;
    Rat c = Rat(factorial(n)) / Rat(factorial(xp) * factorial(k)) * rat_pow(Rat(2), xp);
    if (k % 2 != 0) c = -c;  // t = -1
    out += ScalarExpr::term(Coeff(c), Rat(0), xp, 0, {});
  }
  return out;
}

ScalarExpr generalized_hermite_op(unsigned n, const Rat& alpha, const ScalarExpr& beta) {
  if (n > kMaxDegree) throw InvalidParameter("degree exceeds bound");
  if (!beta.is_t_only()) throw InvalidParameter("beta must be a t-only expression");
  ScalarExpr f(1);
  const ScalarExpr ax = alpha * X();
  for (unsigned k = 0; k < n; ++k) f = ax * f - beta * f.diff(Var::x);
  return f;
}

ScalarExpr generalized_hermite(unsigned n, const Rat& alpha, const Rat& beta) {
  return generalized_hermite_op(n, alpha, ScalarExpr(beta));
}

ScalarExpr generalized_hermite_closed(unsigned n, const Rat& alpha, const Rat& beta) {
  if (n > kMaxDegree) throw InvalidParameter("degree exceeds bound");
  ScalarExpr out;
  const Rat half_ab = alpha * beta / 2;
  for (unsigned k = 0; 2 * k <= n; ++k) {
    unsigned xp = n - 2 * k;
    Rat c = Rat(factorial(n)) / Rat(factorial(xp) * factorial(k)) * rat_pow(alpha, xp) *
            rat_pow(-half_ab, k);
    out += ScalarExpr::term(Coeff(c), Rat(0), xp, 0, {});
  }
  return out;
}

GaussianExpr kernel(KernelKind kind, const Rat& x0, const Rat& t0, const Rat& p0, const Rat& t1) {
  if (kind != KernelKind::x_side && t1 <= 0) throw InvalidWindow("t1 must be positive");
  if (kind == KernelKind::two_sided && !(t0 < t1)) throw InvalidWindow("need t0 < t1");

  auto x_side = [&]() {
    ScalarExpr pre = ScalarExpr::pi_power(Rat(-1, 2)) * ScalarExpr::linear_power(t0, Rat(-1, 2));
    ScalarExpr dx = X() - ScalarExpr(x0);
    ScalarExpr arg = -(dx * dx) * ScalarExpr::linear_power(t0, Rat(-1));
    return GaussianExpr::make(pre, arg);
  };
  auto p_side = [&]() {
    // sqrt(t t1 / pi) (t1 - t)^{-1/2} exp(-t t1 (p-p0)^2 / (t1 - t))
    ScalarExpr pre = ScalarExpr::pi_power(Rat(-1, 2)) *
                     ScalarExpr::term(coeff_sqrt(t1), Rat(0), 0, 0, {{Rat(0), Rat(1, 2), false}}) *
                     ScalarExpr::linear_power(t1, Rat(-1, 2), true);
    ScalarExpr dp = P() - ScalarExpr(p0);
    // -(t1-t)^{-1} = (t-t1)^{-1}
    ScalarExpr arg = t1 * (dp * dp) * T() * ScalarExpr::linear_power(t1, Rat(-1));
    return GaussianExpr::make(pre, arg);
  };

  switch (kind) {
    case KernelKind::x_side: return x_side();
    case KernelKind::p_side: return p_side();
    default: return x_side() * p_side();
  }
}

GaussianExpr thermal(const Rat& nbar) {
  Rat c = 2 * nbar + 1;
  if (c <= 0) throw InvalidParameter("need 2*nbar + 1 > 0");
  // 2 / sqrt((c + t)(c + 1/t)) with (c + 1/t) = c (t + 1/c) / t
  ScalarExpr pre = Rat(2) *
                   (ScalarExpr::term(coeff_pow(c, Rat(-1, 2)), Rat(0), 0, 0,
                                     {{Rat(0), Rat(1, 2), false}}) *
                    ScalarExpr::linear_power(-c, Rat(-1, 2)) *
                    ScalarExpr::linear_power(Rat(-1) / c, Rat(-1, 2)));
  ScalarExpr argx = -(X() * X()) * ScalarExpr::linear_power(-c, Rat(-1));
  ScalarExpr argp = -(Rat(1) / c) * (P() * P() * T() * ScalarExpr::linear_power(Rat(-1) / c, Rat(-1)));
  return GaussianExpr::make(pre, argx + argp);
}

GaussianExpr dual(const GaussianExpr& psi) { return psi.subst(Substitution::exchange()); }

DiffOperator x_side_operator() {
  return DiffOperator::derivative(Var::t) - Rat(1, 4) * DiffOperator::derivative(Var::x, 2);
}

DiffOperator p_side_operator() {
  return DiffOperator::derivative(Var::t) +
         Rat(1, 4) * (ScalarExpr::linear_power(Rat(0), Rat(-2)) * DiffOperator::derivative(Var::p, 2));
}

DiffOperator standard_operator() {
  return DiffOperator::derivative(Var::t) - DiffOperator::derivative(Var::x, 2) +
         DiffOperator::derivative(Var::p, 2);
}

DiffOperator unscaled_psde_operator() {
  return DiffOperator::derivative(Var::t) - DiffOperator::derivative(Var::x, 2) +
         ScalarExpr::linear_power(Rat(0), Rat(-2)) * DiffOperator::derivative(Var::p, 2);
}

GaussianExpr product_solution(const GaussianExpr& f, const GaussianExpr& g) {
  if (f.depends_on(Var::p))
    throw PreconditionViolated("x-side factor must be free of p");
  if (g.depends_on(Var::x))
    throw PreconditionViolated("p-side factor must be free of x");
  GaussianExpr rf = op_apply(x_side_operator(), f);
  if (!rf.is_zero())
    throw PreconditionViolated("x-side residual nonzero: " + rf.str());
  GaussianExpr rg = op_apply(p_side_operator(), g);
  if (!rg.is_zero())
    throw PreconditionViolated("p-side residual nonzero: " + rg.str());
  GaussianExpr q = f * g;
  GaussianExpr rq = op_apply(build_psde_L(), q);
  if (!rq.is_zero()) throw std::logic_error("product residual nonzero: " + rq.str());
  return q;
}

LiftResult lift_standard(const GaussianExpr& u) {
  GaussianExpr pre_res = op_apply(standard_operator(), u);
  if (!pre_res.is_zero())
    throw PreconditionViolated("input does not solve the standard equation: " + pre_res.str());

  Substitution stretch;  // y = p t
  stretch.pp = T();
  GaussianExpr Q = GaussianExpr::make(ScalarExpr::linear_power(Rat(0), Rat(1, 2)),
                                      Rat(-1, 4) * (T() * (P() * P()))) *
                   u.subst(stretch);

  LiftResult out;
  out.Q = Q;
  out.psde_matched = op_apply(build_psde_L(), Q).is_zero();
  out.unscaled_matched = op_apply(unscaled_psde_operator(), Q).is_zero();
  if (out.psde_matched) out.matched = "psde";
  else if (out.unscaled_matched) out.matched = "unscaled";
  else throw NoOperatorMatched("lift residual nonzero for both candidate operators");

  Substitution doubling;
  doubling.xx = ScalarExpr(2);
  doubling.pp = ScalarExpr(2);
  out.scale_relation_ok = op_apply(build_psde_L(), Q.subst(doubling)).is_zero();
  return out;
}

SeriesReport generating_series_residual(unsigned N, const Rat& lambda, SeriesFamily family,
                                        const Rat& alpha, const Rat& beta, double sample_x,
                                        double sample_t) {
  if (N > kMaxDegree) throw InvalidParameter("series order exceeds bound");
  SeriesReport rep;
  rep.N = N;

  Rat a = alpha, b = beta;
  if (family == SeriesFamily::heat) a = 2;  // second coefficient is -t
  if (family == SeriesFamily::hermite) { a = 2; b = 1; }

  auto member = [&](unsigned n) -> ScalarExpr {
    switch (family) {
      case SeriesFamily::heat: return heat_polynomial(n, true);
      case SeriesFamily::hermite: return hermite(n);
      default: return generalized_hermite_closed(n, a, b);
    }
  };
  auto op_member = [&](unsigned n) -> ScalarExpr {
    switch (family) {
      case SeriesFamily::heat: return generalized_hermite_op(n, Rat(2), -T());
      case SeriesFamily::hermite: return generalized_hermite(n, Rat(2), Rat(1));
      default: return generalized_hermite(n, a, b);
    }
  };

  rep.coefficients_ok = true;
  for (unsigned n = 0; n <= N; ++n)
    if (!(op_member(n) == member(n))) rep.coefficients_ok = false;

  // numeric remainder at the sample point
  const long prec = 192;
  BigFloat xv(sample_x, prec), tv(sample_t, prec), zero(0.0, prec);
  BigFloat lam(lambda, prec);
  BigFloat sum(prec);
  BigFloat lam_pow(1.0, prec);
  BigFloat fact(1.0, prec);
  for (unsigned n = 0; n <= N; ++n) {
    if (n > 0) {
      lam_pow = lam_pow * lam;
      fact = fact * BigFloat(static_cast<double>(n), prec);
    }
    sum = sum + lam_pow * member(n).eval(xv, zero, tv, prec) / fact;
  }
  BigFloat next = lam_pow * lam * member(N + 1).eval(xv, zero, tv, prec) /
                  (fact * BigFloat(static_cast<double>(N + 1), prec));
  // exp(lambda a x - (a b / 2) lambda^2), with b = -t for the heat family
  BigFloat bv = family == SeriesFamily::heat ? -tv : BigFloat(b, prec);
  BigFloat arg = lam * BigFloat(a, prec) * xv -
                 BigFloat(a, prec) * bv / BigFloat(2.0, prec) * lam * lam;
  BigFloat target = exp(arg);
  rep.remainder = abs(target - sum).to_double();
  rep.next_term = abs(next).to_double();
  // alternating tails are bounded by the first omitted term; positive tails
  // by the geometric bound a/(1-r) with r < 1/2 on the sampled ranges
  BigFloat after = lam_pow * lam * lam * member(N + 2).eval(xv, zero, tv, prec) /
                   (fact * BigFloat(static_cast<double>(N + 1), prec) *
                    BigFloat(static_cast<double>(N + 2), prec));
  bool alternating = next.sign() * after.sign() < 0;
  double factor = alternating ? 1.0 : 2.0;
  rep.remainder_bounded = rep.remainder <= factor * rep.next_term * (1.0 + 1e-9) + 1e-30;
  return rep;
}

} // namespace psde
