#ifndef PSDE_GENERATORS_HPP
#define PSDE_GENERATORS_HPP

#include <array>
#include <optional>

#include "psde/diff_operator.hpp"

namespace psde {

struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& w) : std::runtime_error(w) {}
};

// First-order symmetry field alpha*Dt + beta*Dx + gamma*Dp + eta*u*Du.
// alpha depends on t only for evolution equations of this kind.
struct VectorField {
  ScalarExpr alpha, beta, gamma, eta;
};

bool operator==(const VectorField& a, const VectorField& b);

// the nine symmetry fields X_1..X_9
VectorField make_generator_X(int i);

// operator form: u*Du replaced by -1
DiffOperator vf_to_operator(const VectorField& X);

// first-order realization with the multiplication part kept as +eta; the
// commutators of these operators reproduce the field brackets verbatim
DiffOperator vf_realization(const VectorField& X);

// the nine operators A_1..A_9; A_i = xa_sign(i) * vf_to_operator(X_i)
DiffOperator make_generator_A(int i);
int xa_sign(int i);  // -1 for i in {6, 9}, else +1

// coefficient quadruple of A_i, with eta holding the multiplication part
// (this is what the one-parameter flow equations integrate)
VectorField generator_field(int i);

// If [L, A] = xi * L exactly, returns xi; absence means A is not a symmetry
// of L. Requires A of derivative order <= 1 and L with unit Dt coefficient.
std::optional<ScalarExpr> check_symmetry(const DiffOperator& L, const DiffOperator& A);

struct DeterminingReport {
  std::array<ScalarExpr, 6> residuals;
  bool pass = false;
};

// residuals of the six determining equations for the PSDE
DeterminingReport check_determining_equations(const VectorField& X);

// the 9-parameter solution of the determining equations; equals
// sum_i c_i * vf(A_i)  (so the i=6,9 components carry the sign convention)
VectorField general_symmetry_family(const std::array<Rat, 9>& c);

// x <-> p, t -> 1/t on operators (Dx <-> Dp, Dt -> -t^2 Dt)
DiffOperator exchange_involution(const DiffOperator& P);

} // namespace psde

#endif
