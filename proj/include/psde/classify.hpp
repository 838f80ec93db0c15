#ifndef PSDE_CLASSIFY_HPP
#define PSDE_CLASSIFY_HPP

#include <array>
#include <optional>

#include "psde/generators.hpp"

namespace psde {

// Symmetry classification of u_t = u_xx + b(t) u_yy by the shape of b.
struct BClassification {
  enum class Kind { standard_reducible, power_law, generic };
  Kind kind = Kind::generic;
  int dim = 5;
  std::optional<Rat> alpha;           // exponent when b = b0 t^alpha
  bool maximal = false;               // alpha in {0, -2}
  ScalarExpr reducibility_residual;   // 2 b b'' - 3 b'^2
  bool x6_verified = false;
  bool h2_verified = false;
  std::optional<ScalarExpr> b_antiderivative;
};

BClassification classify_b(const ScalarExpr& b);
BClassification classify_b_power(const Rat& b0, const Rat& alpha);

// extra scaling generator for b = b0 t^alpha: 2t Dt + x Dx + (alpha+1) y Dy
VectorField power_law_x6(const Rat& alpha);

// the generic five-field basis for u_t = u_xx + b(t) u_yy (y in the p slot)
std::array<VectorField, 5> h2_basis_for_b(const ScalarExpr& b);

// residuals (4 b K' + K b', 2 b b'' - 3 b'^2)
std::pair<ScalarExpr, ScalarExpr> standard_form_conditions(const ScalarExpr& b,
                                                           const ScalarExpr& K);

} // namespace psde

#endif
