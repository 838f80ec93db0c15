#ifndef PSDE_SCALAR_HPP
#define PSDE_SCALAR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "psde/bigfloat.hpp"
#include "psde/numbers.hpp"

namespace psde {

struct SingularEvaluation : std::runtime_error {
  explicit SingularEvaluation(const std::string& w) : std::runtime_error(w) {}
};
struct NegativeBaseFractionalPower : std::runtime_error {
  explicit NegativeBaseFractionalPower(const std::string& w) : std::runtime_error(w) {}
};
struct SubstitutionOutOfFamily : std::runtime_error {
  explicit SubstitutionOutOfFamily(const std::string& w) : std::runtime_error(w) {}
};
struct NonIntegrableInFamily : std::runtime_error {
  explicit NonIntegrableInFamily(const std::string& w) : std::runtime_error(w) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

enum class Var { x, p, t };

// sqrt(t - root) when desc == false, sqrt(root - t) when desc == true.
// Descending bases keep kernel prefactors real on windows t < t1.
struct RadFactor {
  Rat root;
  bool desc = false;
};

bool operator==(const RadFactor& a, const RadFactor& b);
bool operator<(const RadFactor& a, const RadFactor& b);

// One element of the partial-fraction basis of the t-dependence:
// pow >= 0 is the monomial t^pow, pow < 0 is the pole (t - root)^pow.
struct TBase {
  long pow = 0;
  Rat root;
};

bool operator==(const TBase& a, const TBase& b);
bool operator<(const TBase& a, const TBase& b);

struct ScalarTerm {
  Coeff c;
  Rat pi_e;
  unsigned xdeg = 0, pdeg = 0;
  TBase tb;
  std::vector<RadFactor> rads;
};

struct Substitution;

// Exact coefficient-field element: a finite sum of terms
//   q*sqrt(m) * pi^e * x^i * p^j * (t-part) * prod sqrt(t - r)
// in a canonical form (partial fractions in t per radical/pi/sqrt tag)
// that makes zero-testing a syntactic check.
class ScalarExpr {
 public:
  ScalarExpr() = default;
  ScalarExpr(const Rat& v);
  ScalarExpr(long v);

  static ScalarExpr variable(Var v);
  static ScalarExpr pi_power(const Rat& e);
  // (t - root)^e, or (root - t)^e when desc is set; e has denominator 1 or 2
  static ScalarExpr linear_power(const Rat& root, const Rat& e, bool desc = false);
  // (a*t + c)^e normalized into the family (a may be negative or zero)
  static ScalarExpr linear_comb_power(const Rat& a, const Rat& c, const Rat& e);
  // general monomial through the canonicalizer; factors are (root, exponent, desc)
  static ScalarExpr term(const Coeff& c, const Rat& pi_e, unsigned xdeg, unsigned pdeg,
                         const std::vector<std::tuple<Rat, Rat, bool>>& factors);

  const std::vector<ScalarTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool depends_on(Var v) const;
  bool is_t_only() const { return !depends_on(Var::x) && !depends_on(Var::p); }
  // largest xdeg + pdeg over terms
  unsigned xp_degree() const;

  ScalarExpr diff(Var v) const;
  ScalarExpr subst(const Substitution& s) const;
  // exact partial evaluation at rational t = t0
  ScalarExpr eval_t(const Rat& t0) const;
  // termwise antiderivative in t; throws NonIntegrableInFamily on log cases
  ScalarExpr antiderivative_t() const;

  // correct to 2^(-prec_bits + g) with guard g = 32 + ceil(log2(#terms + 1))
  BigFloat eval(const BigFloat& x, const BigFloat& p, const BigFloat& t, long prec_bits) const;

  std::string str() const;
  static ScalarExpr parse(const std::string& text);

  ScalarExpr operator-() const;
  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const ScalarExpr& o);

  friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) { return a.terms_ == b.terms_; }

 private:
  friend class TermBuilder;
  std::vector<ScalarTerm> terms_;  // canonical: sorted keys, nonzero coefficients
};

bool operator==(const ScalarTerm& a, const ScalarTerm& b);

ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b);
ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b);
ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b);
ScalarExpr operator*(const Rat& k, ScalarExpr a);
ScalarExpr pow(const ScalarExpr& a, unsigned n);

// The coordinate maps the group actions need: x and p go to affine
// combinations with t-only coefficients, t goes through one monotone map.
struct Substitution {
  enum class TMap { identity, shift, scale, moebius, invert };

  ScalarExpr xx{1}, xp{0}, x0{0};
  ScalarExpr px{0}, pp{1}, p0{0};
  TMap tmap = TMap::identity;
  Rat tparam = Rat(0);  // shift lambda, scale s (> 0), moebius lambda

  static Substitution identity();
  static Substitution t_shift(const Rat& lambda);
  static Substitution t_scale(const Rat& s);
  static Substitution t_moebius(const Rat& lambda);  // t -> t / (1 + lambda t)
  static Substitution t_invert();                    // t -> 1/t
  // x <-> p exchange combined with t -> 1/t
  static Substitution exchange();
};

} // namespace psde

#endif
