#include "psde/diff_operator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace psde {

bool operator==(const OpTerm& a, const OpTerm& b) {
  return a.dt == b.dt && a.dx == b.dx && a.dp == b.dp && a.coeff == b.coeff;
}

void DiffOperator::normalize() {
  std::map<std::tuple<unsigned, unsigned, unsigned>, ScalarExpr> merged;
  for (auto& t : terms_) {
    auto key = std::make_tuple(t.dt, t.dx, t.dp);
    auto it = merged.find(key);
    if (it == merged.end()) merged.emplace(key, t.coeff);
    else it->second += t.coeff;
  }
  terms_.clear();
  for (auto& [key, coeff] : merged) {
    if (coeff.is_zero()) continue;
    OpTerm t;
    t.coeff = std::move(coeff);
    t.dt = std::get<0>(key);
    t.dx = std::get<1>(key);
    t.dp = std::get<2>(key);
    terms_.push_back(std::move(t));
  }
}

DiffOperator DiffOperator::identity() { return scalar(ScalarExpr(1)); }

DiffOperator DiffOperator::scalar(const ScalarExpr& f) { return term(f, 0, 0, 0); }

DiffOperator DiffOperator::derivative(Var v, unsigned order) {
  switch (v) {
    case Var::t: return term(ScalarExpr(1), order, 0, 0);
    case Var::x: return term(ScalarExpr(1), 0, order, 0);
    default: return term(ScalarExpr(1), 0, 0, order);
  }
}

DiffOperator DiffOperator::term(const ScalarExpr& coeff, unsigned dt, unsigned dx, unsigned dp) {
  DiffOperator P;
  if (!coeff.is_zero()) {
    OpTerm t;
    t.coeff = coeff;
    t.dt = dt;
    t.dx = dx;
    t.dp = dp;
    P.terms_.push_back(std::move(t));
  }
  return P;
}

unsigned DiffOperator::order() const {
  unsigned d = 0;
  for (auto& t : terms_) d = std::max(d, t.dt + t.dx + t.dp);
  return d;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator P = *this;
  for (auto& t : P.terms_) t.coeff = -t.coeff;
  return P;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  for (auto& t : o.terms_) {
    OpTerm n = t;
    n.coeff = -n.coeff;
    terms_.push_back(std::move(n));
  }
  normalize();
  return *this;
}

namespace {

// iterated partial derivative of a scalar
ScalarExpr multi_diff(ScalarExpr f, unsigned dt, unsigned dx, unsigned dp) {
  for (unsigned i = 0; i < dt && !f.is_zero(); ++i) f = f.diff(Var::t);
  for (unsigned i = 0; i < dx && !f.is_zero(); ++i) f = f.diff(Var::x);
  for (unsigned i = 0; i < dp && !f.is_zero(); ++i) f = f.diff(Var::p);
  return f;
}

} // namespace

DiffOperator operator*(const DiffOperator& P, const DiffOperator& Q) {
  DiffOperator out;
  for (auto& a : P.terms()) {
    for (auto& b : Q.terms()) {
      // Dt^a1 Dx^b1 Dp^c1 (g . ) expands over all ways the derivatives can
      // land on the coefficient g
      for (unsigned i = 0; i <= a.dt; ++i) {
        for (unsigned j = 0; j <= a.dx; ++j) {
          for (unsigned k = 0; k <= a.dp; ++k) {
            ScalarExpr g = multi_diff(b.coeff, i, j, k);
            if (g.is_zero()) continue;
            Rat c = Rat(binomial(a.dt, i)) * Rat(binomial(a.dx, j)) * Rat(binomial(a.dp, k));
            out += DiffOperator::term(c * (a.coeff * g), a.dt - i + b.dt, a.dx - j + b.dx,
                                      a.dp - k + b.dp);
          }
        }
      }
    }
  }
  return out;
}

DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }

DiffOperator operator*(const ScalarExpr& f, DiffOperator P) {
  DiffOperator out;
  for (auto& t : P.terms()) out += DiffOperator::term(f * t.coeff, t.dt, t.dx, t.dp);
  return out;
}

DiffOperator operator*(const Rat& k, DiffOperator P) { return ScalarExpr(k) * std::move(P); }

DiffOperator op_commutator(const DiffOperator& P, const DiffOperator& Q) {
  return P * Q - Q * P;
}

ScalarExpr DiffOperator::apply(const ScalarExpr& f) const {
  ScalarExpr out;
  for (auto& t : terms_) out += t.coeff * multi_diff(f, t.dt, t.dx, t.dp);
  return out;
}

DiffOperator build_psde_L() {
  DiffOperator L = DiffOperator::derivative(Var::t);
  L -= Rat(1, 4) * DiffOperator::derivative(Var::x, 2);
  L += Rat(1, 4) * (ScalarExpr::linear_power(Rat(0), Rat(-2)) * DiffOperator::derivative(Var::p, 2));
  return L;
}

DiffOperator build_general_L(const ScalarExpr& a, const ScalarExpr& b) {
  if (!a.is_t_only() || !b.is_t_only())
    throw InvalidCoefficient("generalized operator coefficients must depend on t only");
  DiffOperator L = DiffOperator::derivative(Var::t);
  L -= a * DiffOperator::derivative(Var::x, 2);
  L -= b * DiffOperator::derivative(Var::p, 2);
  return L;
}

DiffOperator GeneralizedL::to_operator() const {
  if (convention == Convention::minus_dy2) return build_general_L(a, b);
  // b given against +Dp^2
  return build_general_L(a, -b);
}

std::string DiffOperator::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool multi = t.coeff.terms().size() > 1;
    if (multi) os << "(" << t.coeff.str() << ")";
    else os << t.coeff.str();
    auto mark = [&](const char* d, unsigned n) {
      if (n == 0) return;
      os << " " << d;
      if (n > 1) os << "^" << n;
    };
    mark("Dt", t.dt);
    mark("Dx", t.dx);
    mark("Dp", t.dp);
  }
  return os.str();
}

} // namespace psde
