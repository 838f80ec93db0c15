#ifndef PSDE_DIFF_OPERATOR_HPP
#define PSDE_DIFF_OPERATOR_HPP

#include <vector>

#include "psde/scalar.hpp"

namespace psde {

struct InvalidCoefficient : std::runtime_error {
  explicit InvalidCoefficient(const std::string& w) : std::runtime_error(w) {}
};

struct OpTerm {
  ScalarExpr coeff;
  unsigned dt = 0, dx = 0, dp = 0;
};

// Linear differential operator sum coeff * Dt^a Dx^b Dp^c with exact
// coefficients; composition expands by the Leibniz rule.
class DiffOperator {
 public:
  DiffOperator() = default;

  static DiffOperator zero() { return {}; }
  static DiffOperator identity();
  static DiffOperator scalar(const ScalarExpr& f);
  static DiffOperator derivative(Var v, unsigned order = 1);
  static DiffOperator term(const ScalarExpr& coeff, unsigned dt, unsigned dx, unsigned dp);

  const std::vector<OpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned order() const;

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  // composition P*Q applies Q first
  friend DiffOperator operator*(const DiffOperator& P, const DiffOperator& Q);

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.terms_ == b.terms_;
  }

  // image of a scalar (the operator applied to a multiplication-free function)
  ScalarExpr apply(const ScalarExpr& f) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<OpTerm> terms_;  // sorted by (dt, dx, dp), nonzero coefficients
};

bool operator==(const OpTerm& a, const OpTerm& b);

DiffOperator operator+(DiffOperator a, const DiffOperator& b);
DiffOperator operator-(DiffOperator a, const DiffOperator& b);
DiffOperator operator*(const ScalarExpr& f, DiffOperator P);
DiffOperator operator*(const Rat& k, DiffOperator P);

inline DiffOperator op_compose(const DiffOperator& P, const DiffOperator& Q) { return P * Q; }
DiffOperator op_commutator(const DiffOperator& P, const DiffOperator& Q);

// L = Dt - (1/4) Dx^2 + (1/(4t^2)) Dp^2
DiffOperator build_psde_L();

// Dt - a(t) Dx^2 - b(t) Dy^2 with the second spatial variable in the p slot
DiffOperator build_general_L(const ScalarExpr& a, const ScalarExpr& b);

// Orientation bookkeeping for the generalized operator: records whether the
// b(t) coefficient was given against +Dp^2 or -Dy^2, so table fixtures and
// classification inputs cannot drift in sign.
struct GeneralizedL {
  enum class Convention { plus_dp2, minus_dy2 };
  ScalarExpr a, b;
  Convention convention = Convention::minus_dy2;

  DiffOperator to_operator() const;
};

} // namespace psde

#endif
