#ifndef PSDE_GAUSSIAN_HPP
#define PSDE_GAUSSIAN_HPP

#include <vector>

#include "psde/diff_operator.hpp"
#include "psde/scalar.hpp"

namespace psde {

struct GTerm {
  ScalarExpr pre;  // nonzero
  ScalarExpr arg;  // joint (x,p)-degree <= 2
};

bool operator==(const GTerm& a, const GTerm& b);

// Finite sums prefactor * exp(argument) with quadratic arguments; the family
// is closed under the partial derivatives, products, and the substitution
// maps, which is what makes symbolic residual checks possible.
class GaussianExpr {
 public:
  GaussianExpr() = default;
  GaussianExpr(const ScalarExpr& pre);  // exp(0) term
  GaussianExpr(const Rat& v) : GaussianExpr(ScalarExpr(v)) {}
  GaussianExpr(long v) : GaussianExpr(ScalarExpr(v)) {}

  static GaussianExpr make(const ScalarExpr& pre, const ScalarExpr& arg);
  static GaussianExpr exp_of(const ScalarExpr& arg) { return make(ScalarExpr(1), arg); }

  const std::vector<GTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool depends_on(Var v) const;
  bool is_scalar() const;  // every exponent argument is zero
  // the prefactor of the exp(0) group (zero if absent)
  ScalarExpr scalar_part() const;

  GaussianExpr operator-() const;
  GaussianExpr& operator+=(const GaussianExpr& o);
  GaussianExpr& operator-=(const GaussianExpr& o);
  GaussianExpr& operator*=(const GaussianExpr& o);

  friend bool operator==(const GaussianExpr& a, const GaussianExpr& b) {
    return a.terms_ == b.terms_;
  }

  GaussianExpr diff(Var v) const;
  GaussianExpr subst(const Substitution& s) const;
  GaussianExpr eval_t(const Rat& t0) const;
  BigFloat eval(const BigFloat& x, const BigFloat& p, const BigFloat& t, long prec_bits) const;

  std::string str() const;
  static GaussianExpr parse(const std::string& text);

 private:
  void normalize();
  std::vector<GTerm> terms_;  // grouped by canonical argument, sorted
};

GaussianExpr operator+(GaussianExpr a, const GaussianExpr& b);
GaussianExpr operator-(GaussianExpr a, const GaussianExpr& b);
GaussianExpr operator*(GaussianExpr a, const GaussianExpr& b);
GaussianExpr operator*(const ScalarExpr& f, GaussianExpr a);
GaussianExpr operator*(const Rat& k, GaussianExpr a);

// exact image of a Gaussian-form expression under a differential operator
GaussianExpr op_apply(const DiffOperator& P, const GaussianExpr& psi);

// strict total order on canonical scalar expressions (used for grouping)
bool scalar_less(const ScalarExpr& a, const ScalarExpr& b);

} // namespace psde

#endif
