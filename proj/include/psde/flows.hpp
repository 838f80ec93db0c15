#ifndef PSDE_FLOWS_HPP
#define PSDE_FLOWS_HPP

#include <string>

#include "psde/forms.hpp"
#include "psde/generators.hpp"

namespace psde {

struct SingularFlow : std::runtime_error {
  explicit SingularFlow(const std::string& w) : std::runtime_error(w) {}
};

// One-parameter group element exp(lambda * A_i) with an exact parameter:
// rational lambda for most generators, a rational scale s = e^lambda for
// i = 2, and a rational hyperbola point (c, s) with c^2 - s^2 = 1 for i = 4.
struct GroupAction {
  int index = 0;
  Rat lambda;        // i != 2, 4
  Rat scale{1};      // i = 2
  Rat ch{1}, sh{0};  // i = 4
  Substitution map;
  GaussianExpr multiplier;
  std::string domain_note;  // nonempty when the action narrows the t-window
};

GroupAction make_group_action(int i, const Rat& lambda);
GroupAction make_group_action_scale(const Rat& s);
GroupAction make_group_action_hyperbolic(const Rat& c, const Rat& s);

GaussianExpr apply_group(const GroupAction& g, const GaussianExpr& psi);
// dispatch on the plain-lambda parameterization (i = 2 takes the scale,
// i = 4 is rejected: it needs the two-component parameter)
GaussianExpr apply_group(int i, const Rat& param, const GaussianExpr& psi);

// composition in the parameter: lambda+mu, s*s', hyperbolic angle addition
GroupAction compose_actions(const GroupAction& a, const GroupAction& b);

struct GroupLawReport {
  bool ok = false;
  std::string detail;
};
GroupLawReport group_law_check(const GroupAction& a, const GroupAction& b,
                               const GaussianExpr& psi);

struct FlowState {
  BigFloat X, P, T, sigma;
  FlowState(long prec) : X(prec), P(prec), T(prec), sigma(prec) {}
};

// classical RK4 along dX = beta, dP = gamma, dT = alpha, dsigma = sigma*eta
FlowState flow_integrate(int i, double lambda_target, double x, double p, double t, double step,
                         long prec_bits = 200);

// closed-form maps and multipliers of exp(lambda A_i) for real parameters
FlowState closed_flow_reference(int i, double lambda, double x, double p, double t,
                                long prec_bits = 200);

struct ConformalReport {
  bool x_side_ok = false;   // conformal image of 1 equals the x-kernel shape
  bool p_side_ok = false;   // likewise for the p-kernel (t > t1 branch)
  bool thermal_ok = false;  // product of the two images is the thermal state
  std::string notes;
};
ConformalReport conformal_kernel_identity();

// exp(-gamma A_3) applied to v_n(2x,t): the normalizable deformation of the
// heat polynomials; verified against its closed form before returning
GaussianExpr transformed_heat_poly(const Rat& gamma, unsigned n);

} // namespace psde

#endif
