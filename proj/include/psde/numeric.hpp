#ifndef PSDE_NUMERIC_HPP
#define PSDE_NUMERIC_HPP

#include <functional>
#include <vector>

#include "psde/forms.hpp"

namespace psde {

struct NonConvergent : std::runtime_error {
  explicit NonConvergent(const std::string& w) : std::runtime_error(w) {}
};
struct EvaluationFailure : std::runtime_error {
  explicit EvaluationFailure(const std::string& w) : std::runtime_error(w) {}
};

using Func3 = std::function<BigFloat(const BigFloat&, const BigFloat&, const BigFloat&)>;
using Func1 = std::function<BigFloat(const BigFloat&)>;

struct GridSpec {
  double x_lo = -1.0, x_hi = 1.0;
  double p_lo = -1.0, p_hi = 1.0;
  double t_lo = 0.5, t_hi = 2.0;
  int nx = 5, np = 5, nt = 5;
  double h = 1.0 / 64;  // coarsest spatial step
  long prec_bits = 128;
};

struct ResidualReport {
  double max_residual = 0.0;       // finest level
  double at_x = 0, at_p = 0, at_t = 0;
  std::vector<double> by_level;    // max residual per refinement
  double order_estimate = 0.0;     // expected ~2 for solutions
};

// central-difference residual of the pseudo-diffusion operator on a grid,
// with three step refinements for the convergence order estimate
ResidualReport fd_residual(const Func3& f, const GridSpec& grid, int refinements = 3);

struct QuadResult {
  BigFloat value;
  double est_error = 0.0;
  int levels = 0;
};

// tanh-sinh quadrature on [a, b]
QuadResult quadrature(const Func1& f, const BigFloat& a, const BigFloat& b, double tol,
                      long prec_bits = 192);

enum class TestFunction { gauss, lorentz, cosine };
BigFloat eval_test_function(TestFunction phi, const BigFloat& v);

struct DeltaRow {
  double eps = 0.0;
  double integral = 0.0;
  double error = 0.0;  // |integral - phi(center)|
};

// delta-sequence check: integrates the kernel against phi as the window
// closes; x side uses eps = t - t0, p side uses eps = 1/t - 1/t1
std::vector<DeltaRow> delta_limit_test(KernelKind side, TestFunction phi,
                                       const std::vector<double>& eps_values,
                                       double center = 0.0, double t1 = 1.0);

struct InvarianceRow {
  double t = 0.0;
  double ix = 0.0;  // integral over x of the conformal image of 1
  double ip = 0.0;  // integral over p
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  double reference = 0.0;  // sqrt(pi / gamma)
  double max_error = 0.0;  // deviation from the reference
  double max_spread = 0.0; // t-dependence
  bool pass = false;
};

InvarianceReport integral_invariance(const Rat& gamma, const std::vector<Rat>& t_values,
                                     double tol = 1e-10);

} // namespace psde

#endif
