#ifndef PSDE_FORMS_HPP
#define PSDE_FORMS_HPP

#include <string>

#include "psde/gaussian.hpp"

namespace psde {

struct InvalidWindow : std::runtime_error {
  explicit InvalidWindow(const std::string& w) : std::runtime_error(w) {}
};
struct InvalidParameter : std::runtime_error {
  explicit InvalidParameter(const std::string& w) : std::runtime_error(w) {}
};
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& w) : std::runtime_error(w) {}
};
struct NoOperatorMatched : std::runtime_error {
  explicit NoOperatorMatched(const std::string& w) : std::runtime_error(w) {}
};

// heat polynomial v_n(x,t) (scaled: v_n(2x,t), the PSDE-normalized family)
ScalarExpr heat_polynomial(unsigned n, bool scaled);

// physicists' Hermite polynomial H_n(x) = v_n(2x,-1)
ScalarExpr hermite(unsigned n);

// (alpha*x - beta*d/dx)^n . 1 by operator iteration
ScalarExpr generalized_hermite(unsigned n, const Rat& alpha, const Rat& beta);
// closed sum derived from the generating function exp(g*a*x - (a*b/2) g^2)
ScalarExpr generalized_hermite_closed(unsigned n, const Rat& alpha, const Rat& beta);
// iteration with a t-dependent second coefficient (e.g. beta = -t)
ScalarExpr generalized_hermite_op(unsigned n, const Rat& alpha, const ScalarExpr& beta);

enum class KernelKind { x_side, p_side, two_sided };

// The diffusion kernels: x_side solves the forward 1-d equation from (x0,t0),
// p_side the backward one with data imposed at t1 from below, two_sided their
// product, real and positive on t0 < t < t1 and normalized so each side
// integrates to one.
GaussianExpr kernel(KernelKind kind, const Rat& x0, const Rat& t0, const Rat& p0, const Rat& t1);

// squeezed thermal distribution, normalized as its t = 1 reduction demands
GaussianExpr thermal(const Rat& nbar);

// psi(p, x, 1/t): maps solutions to solutions
GaussianExpr dual(const GaussianExpr& psi);

// f(x,t) * g(p,t) with both one-sided equations checked symbolically
GaussianExpr product_solution(const GaussianExpr& f, const GaussianExpr& g);

// the operators the product construction verifies against
DiffOperator x_side_operator();  // Dt - (1/4) Dx^2
DiffOperator p_side_operator();  // Dt + (1/(4t^2)) Dp^2
// constant-coefficient target u_t = u_xx - u_yy, y in the p slot
DiffOperator standard_operator();
// Dt - Dx^2 + t^-2 Dp^2
DiffOperator unscaled_psde_operator();

struct LiftResult {
  GaussianExpr Q;            // t^(1/2) exp(-t p^2/4) u(x, p t, t)
  bool psde_matched = false;
  bool unscaled_matched = false;
  std::string matched;       // "psde" or "unscaled"
  // u(2x, 2p, t) of an unscaled solution solves the PSDE; checked on Q
  bool scale_relation_ok = false;
};

// lifts a solution of the standard equation through the point transformation
LiftResult lift_standard(const GaussianExpr& u);

enum class SeriesFamily { heat, hermite, ghp };

struct SeriesReport {
  unsigned N = 0;
  bool coefficients_ok = false;   // operator powers match closed forms, n <= N
  double remainder = 0.0;         // |exp target - partial sum| at the sample
  double next_term = 0.0;         // magnitude of the first omitted term
  bool remainder_bounded = false; // remainder <= next term (up to roundoff)
};

SeriesReport generating_series_residual(unsigned N, const Rat& lambda, SeriesFamily family,
                                        const Rat& alpha = Rat(2), const Rat& beta = Rat(1),
                                        double sample_x = 1.0, double sample_t = 1.0);

} // namespace psde

#endif
