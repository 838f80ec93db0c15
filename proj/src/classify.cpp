#include "psde/classify.hpp"

namespace psde {

namespace {

ScalarExpr X() { return ScalarExpr::variable(Var::x); }
ScalarExpr P() { return ScalarExpr::variable(Var::p); }
ScalarExpr T() { return ScalarExpr::variable(Var::t); }

// b = b0 t^alpha detection on the canonical form: a single term whose only
// factors sit at root 0
std::optional<Rat> power_exponent(const ScalarExpr& b) {
  if (b.terms().size() != 1) return std::nullopt;
  const ScalarTerm& t = b.terms()[0];
  if (t.xdeg || t.pdeg || t.pi_e != 0) return std::nullopt;
  Rat e(0);
  if (t.tb.pow > 0) e += t.tb.pow;
  else if (t.tb.pow < 0) {
    if (!(t.tb.root == 0)) return std::nullopt;
    e += t.tb.pow;
  }
  for (auto& r : t.rads) {
    if (!(r.root == 0) || r.desc) return std::nullopt;
    e += Rat(1, 2);
  }
  return e;
}

} // namespace

VectorField power_law_x6(const Rat& alpha) {
  VectorField v;
  v.alpha = Rat(2) * T();
  v.beta = X();
  v.gamma = (alpha + 1) * P();
  return v;
}

std::array<VectorField, 5> h2_basis_for_b(const ScalarExpr& b) {
  if (!b.is_t_only()) throw InvalidCoefficient("b must depend on t only");
  ScalarExpr B = b.antiderivative_t();
  std::array<VectorField, 5> out;
  out[0].beta = T();
  out[0].eta = Rat(-1, 2) * X();
  out[1].beta = ScalarExpr(1);
  out[2].gamma = B;
  out[2].eta = Rat(-1, 2) * P();
  out[3].gamma = ScalarExpr(1);
  out[4].eta = ScalarExpr(1);
  return out;
}

std::pair<ScalarExpr, ScalarExpr> standard_form_conditions(const ScalarExpr& b,
                                                           const ScalarExpr& K) {
  if (!b.is_t_only() || !K.is_t_only())
    throw InvalidCoefficient("standard-form conditions expect t-only inputs");
  ScalarExpr bp = b.diff(Var::t);
  ScalarExpr bpp = bp.diff(Var::t);
  ScalarExpr Kp = K.diff(Var::t);
  ScalarExpr first = Rat(4) * (b * Kp) + K * bp;
  ScalarExpr second = Rat(2) * (b * bpp) - Rat(3) * (bp * bp);
  return {first, second};
}

BClassification classify_b(const ScalarExpr& b) {
  if (b.is_zero() || !b.is_t_only()) throw InvalidCoefficient("b must be nonzero and t-only");

  BClassification rep;
  ScalarExpr bp = b.diff(Var::t);
  ScalarExpr bpp = bp.diff(Var::t);
  rep.reducibility_residual = Rat(2) * (b * bpp) - Rat(3) * (bp * bp);
  rep.alpha = power_exponent(b);

  const DiffOperator Lb = build_general_L(ScalarExpr(1), b);

  // the generic h2 wing, when the antiderivative exists in the family
  try {
    rep.b_antiderivative = b.antiderivative_t();
    bool ok = true;
    for (auto& f : h2_basis_for_b(b)) {
      auto xi = check_symmetry(Lb, vf_to_operator(f));
      if (!xi || !xi->is_zero()) ok = false;
    }
    rep.h2_verified = ok;
  } catch (const NonIntegrableInFamily&) {
    rep.b_antiderivative.reset();
  }

  if (rep.reducibility_residual.is_zero()) {
    rep.kind = BClassification::Kind::standard_reducible;
    rep.dim = 9;
    if (rep.alpha && (*rep.alpha == 0 || *rep.alpha == -2)) rep.maximal = true;
    return rep;
  }
  if (rep.alpha) {
    rep.kind = BClassification::Kind::power_law;
    rep.dim = 6;
    auto xi = check_symmetry(Lb, vf_to_operator(power_law_x6(*rep.alpha)));
    rep.x6_verified = xi.has_value();
    return rep;
  }
  rep.kind = BClassification::Kind::generic;
  rep.dim = 5;
  return rep;
}

BClassification classify_b_power(const Rat& b0, const Rat& alpha) {
  if (b0 == 0) throw InvalidCoefficient("b0 must be nonzero");
  ScalarExpr b = b0 * ScalarExpr::linear_power(Rat(0), alpha);
  return classify_b(b);
}

} // namespace psde
