#include "psde/generators.hpp"

namespace psde {

namespace {
ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }
ScalarExpr tpow(long n) { return ScalarExpr::linear_power(Rat(0), Rat(n)); }
} // namespace

bool operator==(const VectorField& a, const VectorField& b) {
  return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.eta == b.eta;
}

VectorField make_generator_X(int i) {
  VectorField v;
  switch (i) {
    case 1:
      v.alpha = ScalarExpr(1);
      v.gamma = -(P() * tpow(-1));
      v.eta = P() * P() + Rat(1, 2) * tpow(-1);
      break;
    case 2:
      v.alpha = Rat(2) * T();
      v.beta = X();
      v.gamma = -P();
      break;
    case 3:
      v.alpha = T() * T();
      v.beta = X() * T();
      v.eta = -(X() * X() + Rat(1, 2) * T());
      break;
    case 4:
      v.beta = T() * P();
      v.gamma = X() * tpow(-1);
      v.eta = Rat(-2) * (X() * P());
      break;
    case 5:
      v.beta = T();
      v.eta = Rat(-2) * X();
      break;
    case 6:
      v.gamma = -tpow(-1);
      v.eta = Rat(2) * P();
      break;
    case 7: v.beta = ScalarExpr(1); break;
    case 8: v.gamma = ScalarExpr(1); break;
    case 9: v.eta = ScalarExpr(1); break;
    default: throw IndexOutOfRange("generator index must be 1..9");
  }
  return v;
}

DiffOperator vf_to_operator(const VectorField& v) {
  DiffOperator A = DiffOperator::term(v.alpha, 1, 0, 0);
  A += DiffOperator::term(v.beta, 0, 1, 0);
  A += DiffOperator::term(v.gamma, 0, 0, 1);
  A += DiffOperator::scalar(-v.eta);
  return A;
}

DiffOperator vf_realization(const VectorField& v) {
  DiffOperator A = DiffOperator::term(v.alpha, 1, 0, 0);
  A += DiffOperator::term(v.beta, 0, 1, 0);
  A += DiffOperator::term(v.gamma, 0, 0, 1);
  A += DiffOperator::scalar(v.eta);
  return A;
}

int xa_sign(int i) { return (i == 6 || i == 9) ? -1 : 1; }

DiffOperator make_generator_A(int i) {
  DiffOperator A = vf_to_operator(make_generator_X(i));
  return xa_sign(i) > 0 ? A : -A;
}

VectorField generator_field(int i) {
  VectorField v = make_generator_X(i);
  const Rat s(xa_sign(i));
  v.alpha = s * v.alpha;
  v.beta = s * v.beta;
  v.gamma = s * v.gamma;
  v.eta = s * (-v.eta);  // multiplication part of A_i
  return v;
}

std::optional<ScalarExpr> check_symmetry(const DiffOperator& L, const DiffOperator& A) {
  if (A.order() > 1) throw std::invalid_argument("check_symmetry expects a first-order operator");
  DiffOperator C = op_commutator(L, A);
  // L has unit Dt coefficient, so xi must be the Dt coefficient of C
  ScalarExpr xi;
  for (auto& t : C.terms())
    if (t.dt == 1 && t.dx == 0 && t.dp == 0) xi = t.coeff;
  DiffOperator resid = C - DiffOperator::scalar(xi) * L;
  if (resid.is_zero()) return xi;
  return std::nullopt;
}

DeterminingReport check_determining_equations(const VectorField& v) {
  const ScalarExpr t2 = tpow(2);
  const ScalarExpr& a = v.alpha;
  const ScalarExpr& b = v.beta;
  const ScalarExpr& g = v.gamma;
  const ScalarExpr& e = v.eta;

  DeterminingReport rep;
  rep.residuals[0] = t2 * g.diff(Var::x) - b.diff(Var::p);
  rep.residuals[1] = T() * (b.diff(Var::x) - g.diff(Var::p)) - a;
  rep.residuals[2] = t2 * g.diff(Var::x).diff(Var::x) - g.diff(Var::p).diff(Var::p) -
                     Rat(4) * (t2 * g.diff(Var::t)) + Rat(2) * e.diff(Var::p);
  rep.residuals[3] = t2 * b.diff(Var::x).diff(Var::x) - b.diff(Var::p).diff(Var::p) -
                     Rat(2) * (t2 * e.diff(Var::x)) - Rat(4) * (t2 * b.diff(Var::t));
  rep.residuals[4] = Rat(2) * b.diff(Var::x) - a.diff(Var::t);
  rep.residuals[5] = e.diff(Var::p).diff(Var::p) - t2 * e.diff(Var::x).diff(Var::x) +
                     Rat(4) * (t2 * e.diff(Var::t));
  rep.pass = true;
  for (auto& r : rep.residuals)
    if (!r.is_zero()) rep.pass = false;
  return rep;
}

VectorField general_symmetry_family(const std::array<Rat, 9>& c) {
  VectorField v;
  v.alpha = c[2] * (T() * T()) + Rat(2) * (c[1] * T()) + ScalarExpr(c[0]);
  v.beta = (c[2] * T() + ScalarExpr(c[1])) * X() + c[3] * (T() * P()) + c[4] * T() + ScalarExpr(c[6]);
  v.gamma = -(ScalarExpr(c[1]) + c[0] * tpow(-1)) * P() + c[3] * (X() * tpow(-1)) +
            c[5] * tpow(-1) + ScalarExpr(c[7]);
  // multiplication part of sum_i c_i A_i; the u*Du coefficient is its negative
  ScalarExpr eta_op = c[2] * (X() * X() + Rat(1, 2) * T()) -
                      c[0] * (P() * P() + Rat(1, 2) * tpow(-1)) + Rat(2) * (c[3] * (X() * P())) +
                      Rat(2) * (c[4] * X()) + Rat(2) * (c[5] * P()) + ScalarExpr(c[8]);
  v.eta = -eta_op;
  return v;
}

DiffOperator exchange_involution(const DiffOperator& Pop) {
  const Substitution ex = Substitution::exchange();
  const DiffOperator mt2dt = DiffOperator::term(-(T() * T()), 1, 0, 0);
  DiffOperator out;
  for (auto& t : Pop.terms()) {
    DiffOperator img = DiffOperator::scalar(t.coeff.subst(ex));
    for (unsigned i = 0; i < t.dt; ++i) img = img * mt2dt;
    if (t.dx) img = img * DiffOperator::derivative(Var::p, t.dx);
    if (t.dp) img = img * DiffOperator::derivative(Var::x, t.dp);
    out += img;
  }
  return out;
}

} // namespace psde
