#include "psde/flows.hpp"

#include <cmath>

namespace psde {

namespace {
ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }
} // namespace

GroupAction make_group_action(int i, const Rat& lambda) {
  GroupAction g;
  g.index = i;
  g.lambda = lambda;
  g.multiplier = GaussianExpr(ScalarExpr(1));
  switch (i) {
    case 1: {
      g.map = Substitution::t_shift(lambda);
      if (lambda < 0) g.domain_note = "valid for t > " + rat_to_string(-lambda);
      if (lambda != 0) {
        g.map.pp = T() * ScalarExpr::linear_power(-lambda, Rat(-1));
        ScalarExpr pre = ScalarExpr::linear_power(Rat(0), Rat(1, 2)) *
                         ScalarExpr::linear_power(-lambda, Rat(-1, 2));
        ScalarExpr arg = -lambda * (P() * P()) +
                         (lambda * lambda) * (P() * P() * ScalarExpr::linear_power(-lambda, Rat(-1)));
        g.multiplier = GaussianExpr::make(pre, arg);
      }
      break;
    }
    case 3: {
      if (lambda > 0) g.domain_note = "valid for t < " + rat_to_string(Rat(1) / lambda);
      if (lambda != 0) {
        g.map = Substitution::t_moebius(-lambda);
        // 1/(1 - lambda t)
        ScalarExpr winv = ScalarExpr::linear_comb_power(-lambda, Rat(1), Rat(-1));
        g.map.xx = winv;
        ScalarExpr pre = ScalarExpr::linear_comb_power(-lambda, Rat(1), Rat(-1, 2));
        ScalarExpr arg = lambda * (X() * X() * winv);
        g.multiplier = GaussianExpr::make(pre, arg);
      }
      break;
    }
    case 5:
      g.map.x0 = lambda * T();
      g.multiplier = GaussianExpr::exp_of(Rat(2) * (lambda * X()) + (lambda * lambda) * T());
      break;
    case 6:
      g.map.p0 = lambda * ScalarExpr::linear_power(Rat(0), Rat(-1));
      g.multiplier = GaussianExpr::exp_of(Rat(2) * (lambda * P()) +
                                          (lambda * lambda) * ScalarExpr::linear_power(Rat(0), Rat(-1)));
      break;
    case 7: g.map.x0 = ScalarExpr(lambda); break;
    case 8: g.map.p0 = ScalarExpr(lambda); break;
    case 9: g.multiplier = GaussianExpr::exp_of(ScalarExpr(lambda)); break;
    case 2:
    case 4:
      throw std::invalid_argument("generator needs its dedicated parameterization");
    default: throw IndexOutOfRange("generator index must be 1..9");
  }
  return g;
}

GroupAction make_group_action_scale(const Rat& s) {
  if (s <= 0) throw InvalidParameter("scale must be positive");
  GroupAction g;
  g.index = 2;
  g.scale = s;
  g.map = Substitution::t_scale(s * s);
  g.map.xx = ScalarExpr(s);
  g.map.pp = ScalarExpr(Rat(1) / s);
  g.multiplier = GaussianExpr(ScalarExpr(1));
  return g;
}

GroupAction make_group_action_hyperbolic(const Rat& c, const Rat& s) {
  if (c * c - s * s != 1 || c <= 0) throw InvalidParameter("need c^2 - s^2 = 1 with c > 0");
  GroupAction g;
  g.index = 4;
  g.ch = c;
  g.sh = s;
  g.map.xx = ScalarExpr(c);
  g.map.xp = s * T();
  g.map.px = s * ScalarExpr::linear_power(Rat(0), Rat(-1));
  g.map.pp = ScalarExpr(c);
  ScalarExpr arg = (s * s) * (X() * X() * ScalarExpr::linear_power(Rat(0), Rat(-1))) +
                   (s * s) * (P() * P() * T()) + Rat(2) * (c * s * (X() * P()));
  g.multiplier = GaussianExpr::exp_of(arg);
  return g;
}

GaussianExpr apply_group(const GroupAction& g, const GaussianExpr& psi) {
  return g.multiplier * psi.subst(g.map);
}

GaussianExpr apply_group(int i, const Rat& param, const GaussianExpr& psi) {
  if (i == 2) return apply_group(make_group_action_scale(param), psi);
  if (i == 4) throw std::invalid_argument("the pseudo-rotation takes a (c, s) pair");
  return apply_group(make_group_action(i, param), psi);
}

GroupAction compose_actions(const GroupAction& a, const GroupAction& b) {
  if (a.index != b.index) throw std::invalid_argument("cannot compose different generators");
  switch (a.index) {
    case 2: return make_group_action_scale(a.scale * b.scale);
    case 4:
      return make_group_action_hyperbolic(a.ch * b.ch + a.sh * b.sh, a.ch * b.sh + a.sh * b.ch);
    default: return make_group_action(a.index, a.lambda + b.lambda);
  }
}

GroupLawReport group_law_check(const GroupAction& a, const GroupAction& b,
                               const GaussianExpr& psi) {
  GroupLawReport rep;
  GaussianExpr lhs = apply_group(a, apply_group(b, psi));
  GaussianExpr rhs = apply_group(compose_actions(a, b), psi);
  rep.ok = lhs == rhs;
  if (!rep.ok) rep.detail = "composition mismatch on generator " + std::to_string(a.index);
  return rep;
}

FlowState flow_integrate(int i, double lambda_target, double x, double p, double t, double step,
                         long prec_bits) {
  const VectorField f = generator_field(i);
  FlowState st(prec_bits);
  st.X = BigFloat(x, prec_bits);
  st.P = BigFloat(p, prec_bits);
  st.T = BigFloat(t, prec_bits);
  st.sigma = BigFloat(1.0, prec_bits);

  const long n_steps = std::lround(std::abs(lambda_target) / step);
  if (n_steps == 0) return st;
  BigFloat h(lambda_target, prec_bits);
  h = h / BigFloat(static_cast<double>(n_steps), prec_bits);

  struct Deriv {
    BigFloat dX, dP, dT, dS;
    Deriv(long prec) : dX(prec), dP(prec), dT(prec), dS(prec) {}
  };
  auto rhs = [&](const BigFloat& X_, const BigFloat& P_, const BigFloat& T_,
                 const BigFloat& S_) {
    if (T_.sign() <= 0) throw SingularFlow("flow left the t > 0 domain");
    Deriv d(prec_bits);
    try {
      d.dX = f.beta.eval(X_, P_, T_, prec_bits);
      d.dP = f.gamma.eval(X_, P_, T_, prec_bits);
      d.dT = f.alpha.eval(X_, P_, T_, prec_bits);
      d.dS = S_ * f.eta.eval(X_, P_, T_, prec_bits);
    } catch (const SingularEvaluation&) {
      throw SingularFlow("flow hit a coefficient singularity");
    }
    return d;
  };

  const BigFloat half(0.5, prec_bits), sixth(Rat(1, 6), prec_bits), two(2.0, prec_bits);
  for (long k = 0; k < n_steps; ++k) {
    Deriv k1 = rhs(st.X, st.P, st.T, st.sigma);
    Deriv k2 = rhs(st.X + half * h * k1.dX, st.P + half * h * k1.dP, st.T + half * h * k1.dT,
                   st.sigma + half * h * k1.dS);
    Deriv k3 = rhs(st.X + half * h * k2.dX, st.P + half * h * k2.dP, st.T + half * h * k2.dT,
                   st.sigma + half * h * k2.dS);
    Deriv k4 = rhs(st.X + h * k3.dX, st.P + h * k3.dP, st.T + h * k3.dT, st.sigma + h * k3.dS);
    st.X = st.X + sixth * h * (k1.dX + two * k2.dX + two * k3.dX + k4.dX);
    st.P = st.P + sixth * h * (k1.dP + two * k2.dP + two * k3.dP + k4.dP);
    st.T = st.T + sixth * h * (k1.dT + two * k2.dT + two * k3.dT + k4.dT);
    st.sigma = st.sigma + sixth * h * (k1.dS + two * k2.dS + two * k3.dS + k4.dS);
  }
  return st;
}

FlowState closed_flow_reference(int i, double lambda, double x, double p, double t,
                                long prec_bits) {
  const long wp = prec_bits;
  BigFloat lam(lambda, wp), xv(x, wp), pv(p, wp), tv(t, wp);
  BigFloat one(1.0, wp), two(2.0, wp);
  FlowState st(wp);
  st.X = xv;
  st.P = pv;
  st.T = tv;
  st.sigma = one;
  switch (i) {
    case 1: {
      st.T = tv + lam;
      if (st.T.sign() <= 0) throw SingularFlow("t + lambda must stay positive");
      st.P = pv * tv / st.T;
      st.sigma = sqrt(tv / st.T) * exp(-(lam * tv * pv * pv) / st.T);
      break;
    }
    case 2: {
      BigFloat el = exp(lam);
      st.X = el * xv;
      st.P = pv / el;
      st.T = el * el * tv;
      break;
    }
    case 3: {
      BigFloat w = one - lam * tv;
      if (w.sign() <= 0) throw SingularFlow("1 - lambda t must stay positive");
      st.X = xv / w;
      st.T = tv / w;
      st.sigma = exp(lam * xv * xv / w) / sqrt(w);
      break;
    }
    case 4: {
      BigFloat ch = cosh(lam), sh = sinh(lam);
      st.X = xv * ch + tv * pv * sh;
      st.P = pv * ch + xv / tv * sh;
      st.sigma = exp(sh * sh * (xv * xv / tv + pv * pv * tv) + xv * pv * sinh(two * lam));
      break;
    }
    case 5:
      st.X = xv + lam * tv;
      st.sigma = exp(two * lam * xv + lam * lam * tv);
      break;
    case 6:
      st.P = pv + lam / tv;
      st.sigma = exp(two * lam * pv + lam * lam / tv);
      break;
    case 7: st.X = xv + lam; break;
    case 8: st.P = pv + lam; break;
    case 9: st.sigma = exp(lam); break;
    default: throw IndexOutOfRange("generator index must be 1..9");
  }
  return st;
}

ConformalReport conformal_kernel_identity() {
  ConformalReport rep;
  const GaussianExpr one(ScalarExpr(1));

  // x side: exp((1/t0) A_3) . 1 = sqrt(pi * (-t0)) * K_x(x0 = 0, t0) for t0 < 0
  rep.x_side_ok = true;
  for (Rat t0 : {Rat(-1), Rat(-2), Rat(-1, 3)}) {
    GaussianExpr lhs = apply_group(make_group_action(3, Rat(1) / t0), one);
    ScalarExpr scale = ScalarExpr::pi_power(Rat(1, 2)) *
                       ScalarExpr::term(coeff_sqrt(-t0), Rat(0), 0, 0, {});
    GaussianExpr rhs = scale * kernel(KernelKind::x_side, Rat(0), t0, Rat(0), Rat(1));
    if (!(lhs == rhs)) rep.x_side_ok = false;
  }

  // p side: exp(-t1 A_1) . 1 = sqrt(pi / t1) * K_p^+ where K_p^+ is the
  // t > t1 branch of the p-kernel (the t < t1 branch differs by the factor i)
  rep.p_side_ok = true;
  for (Rat t1 : {Rat(1), Rat(4)}) {
    GaussianExpr lhs = apply_group(make_group_action(1, -t1), one);
    ScalarExpr pre = ScalarExpr::pi_power(Rat(-1, 2)) *
                     ScalarExpr::term(coeff_sqrt(t1), Rat(0), 0, 0, {{Rat(0), Rat(1, 2), false}}) *
                     ScalarExpr::linear_power(t1, Rat(-1, 2));
    ScalarExpr arg = t1 * (P() * P()) * T() * ScalarExpr::linear_power(t1, Rat(-1));
    GaussianExpr kp_plus = GaussianExpr::make(pre, arg);
    ScalarExpr scale = ScalarExpr::pi_power(Rat(1, 2)) *
                       ScalarExpr::term(coeff_sqrt(Rat(1) / t1), Rat(0), 0, 0, {});
    if (!(lhs == scale * kp_plus)) rep.p_side_ok = false;
  }

  // product: 2 gamma * (exp(-gamma A_3) . 1) * (exp(gamma A_1) . 1) = Q_th
  rep.thermal_ok = true;
  for (Rat nbar : {Rat(0), Rat(1), Rat(5)}) {
    Rat gamma = Rat(1) / (2 * nbar + 1);
    GaussianExpr gx = apply_group(make_group_action(3, -gamma), one);
    GaussianExpr gp = apply_group(make_group_action(1, gamma), one);
    GaussianExpr lhs = (2 * gamma) * (gx * gp);
    if (!(lhs == thermal(nbar))) rep.thermal_ok = false;
  }

  rep.notes =
      "x-kernel reproduced with parameter 1/t0 (t0 < 0); p-kernel reproduced on its t > t1 "
      "branch up to the constant sqrt(pi/t1); thermal state equals 2*gamma times the product "
      "of the two conformal images";
  return rep;
}

GaussianExpr transformed_heat_poly(const Rat& gamma, unsigned n) {
  if (1 + gamma <= 0) throw InvalidParameter("need 1 + gamma t > 0 on the window");
  GaussianExpr vn(heat_polynomial(n, true));
  GaussianExpr moved = apply_group(make_group_action(3, -gamma), vn);

  // closed form: v_n(2x/(1+g t), t/(1+g t)) (1+g t)^{-1/2} exp(-g x^2/(1+g t))
  Substitution inside;
  inside.xx = ScalarExpr::linear_comb_power(gamma, Rat(1), Rat(-1));
  inside.tmap = Substitution::TMap::moebius;
  inside.tparam = gamma;
  ScalarExpr pre = ScalarExpr::linear_comb_power(gamma, Rat(1), Rat(-1, 2));
  ScalarExpr arg = -gamma * (X() * X() * ScalarExpr::linear_comb_power(gamma, Rat(1), Rat(-1)));
  GaussianExpr closed = GaussianExpr::make(pre, arg) * vn.subst(inside);
  if (!(moved == closed))
    throw std::logic_error("transformed heat polynomial disagrees with its closed form");
  return moved;
}

} // namespace psde
