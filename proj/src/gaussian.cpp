#include "psde/gaussian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace psde {

namespace {

int rad_cmp(const RadFactor& a, const RadFactor& b) {
  int c = cmp(a.root, b.root);
  if (c != 0) return c;
  return (a.desc ? 1 : 0) - (b.desc ? 1 : 0);
}

int tbase_cmp(const TBase& a, const TBase& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

int term_cmp(const ScalarTerm& a, const ScalarTerm& b) {
  if (a.xdeg != b.xdeg) return a.xdeg < b.xdeg ? -1 : 1;
  if (a.pdeg != b.pdeg) return a.pdeg < b.pdeg ? -1 : 1;
  int c = cmp(a.pi_e, b.pi_e);
  if (c != 0) return c;
  c = cmp(a.c.m, b.c.m);
  if (c != 0) return c;
  if (a.rads.size() != b.rads.size()) return a.rads.size() < b.rads.size() ? -1 : 1;
  for (size_t i = 0; i < a.rads.size(); ++i) {
    c = rad_cmp(a.rads[i], b.rads[i]);
    if (c != 0) return c;
  }
  c = tbase_cmp(a.tb, b.tb);
  if (c != 0) return c;
  return cmp(a.c.q, b.c.q);
}

} // namespace

bool scalar_less(const ScalarExpr& a, const ScalarExpr& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  size_t n = std::min(ta.size(), tb.size());
  for (size_t i = 0; i < n; ++i) {
    int c = term_cmp(ta[i], tb[i]);
    if (c != 0) return c < 0;
  }
  return ta.size() < tb.size();
}

bool operator==(const GTerm& a, const GTerm& b) { return a.pre == b.pre && a.arg == b.arg; }

namespace {
struct ArgLess {
  bool operator()(const ScalarExpr& a, const ScalarExpr& b) const { return scalar_less(a, b); }
};
} // namespace

void GaussianExpr::normalize() {
  std::map<ScalarExpr, ScalarExpr, ArgLess> groups;
  for (auto& t : terms_) {
    auto it = groups.find(t.arg);
    if (it == groups.end()) groups.emplace(t.arg, t.pre);
    else it->second += t.pre;
  }
  terms_.clear();
  for (auto& [arg, pre] : groups) {
    if (pre.is_zero()) continue;
    terms_.push_back({std::move(pre), arg});
  }
}

GaussianExpr::GaussianExpr(const ScalarExpr& pre) {
  if (!pre.is_zero()) terms_.push_back({pre, ScalarExpr()});
}

GaussianExpr GaussianExpr::make(const ScalarExpr& pre, const ScalarExpr& arg) {
  if (arg.xp_degree() > 2)
    throw std::invalid_argument("exponent argument must have joint (x,p)-degree <= 2");
  GaussianExpr g;
  if (!pre.is_zero()) g.terms_.push_back({pre, arg});
  return g;
}

bool GaussianExpr::depends_on(Var v) const {
  for (auto& t : terms_)
    if (t.pre.depends_on(v) || t.arg.depends_on(v)) return true;
  return false;
}

bool GaussianExpr::is_scalar() const {
  for (auto& t : terms_)
    if (!t.arg.is_zero()) return false;
  return true;
}

ScalarExpr GaussianExpr::scalar_part() const {
  for (auto& t : terms_)
    if (t.arg.is_zero()) return t.pre;
  return ScalarExpr();
}

GaussianExpr GaussianExpr::operator-() const {
  GaussianExpr g = *this;
  for (auto& t : g.terms_) t.pre = -t.pre;
  return g;
}

GaussianExpr& GaussianExpr::operator+=(const GaussianExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  normalize();
  return *this;
}

GaussianExpr& GaussianExpr::operator-=(const GaussianExpr& o) {
  for (auto& t : o.terms_) terms_.push_back({-t.pre, t.arg});
  normalize();
  return *this;
}

GaussianExpr& GaussianExpr::operator*=(const GaussianExpr& o) {
  std::vector<GTerm> out;
  for (auto& a : terms_)
    for (auto& b : o.terms_) out.push_back({a.pre * b.pre, a.arg + b.arg});
  terms_ = std::move(out);
  normalize();
  return *this;
}

GaussianExpr operator+(GaussianExpr a, const GaussianExpr& b) { return a += b; }
GaussianExpr operator-(GaussianExpr a, const GaussianExpr& b) { return a -= b; }
GaussianExpr operator*(GaussianExpr a, const GaussianExpr& b) { return a *= b; }
GaussianExpr operator*(const ScalarExpr& f, GaussianExpr a) { return a *= GaussianExpr(f); }
GaussianExpr operator*(const Rat& k, GaussianExpr a) { return a *= GaussianExpr(ScalarExpr(k)); }

GaussianExpr GaussianExpr::diff(Var v) const {
  GaussianExpr out;
  for (auto& t : terms_) {
    ScalarExpr pre = t.pre.diff(v) + t.pre * t.arg.diff(v);
    if (!pre.is_zero()) out.terms_.push_back({std::move(pre), t.arg});
  }
  out.normalize();
  return out;
}

GaussianExpr GaussianExpr::subst(const Substitution& s) const {
  GaussianExpr out;
  for (auto& t : terms_) out.terms_.push_back({t.pre.subst(s), t.arg.subst(s)});
  out.normalize();
  return out;
}

GaussianExpr GaussianExpr::eval_t(const Rat& t0) const {
  GaussianExpr out;
  for (auto& t : terms_) out.terms_.push_back({t.pre.eval_t(t0), t.arg.eval_t(t0)});
  out.normalize();
  return out;
}

BigFloat GaussianExpr::eval(const BigFloat& x, const BigFloat& p, const BigFloat& t,
                            long prec_bits) const {
  const long wp = prec_bits + 32;
  BigFloat sum(wp);
  for (auto& term : terms_) {
    BigFloat v = term.pre.eval(x, p, t, wp);
    if (!term.arg.is_zero()) v = v * exp(term.arg.eval(x, p, t, wp));
    sum = sum + v;
  }
  return sum;
}

GaussianExpr op_apply(const DiffOperator& P, const GaussianExpr& psi) {
  GaussianExpr out;
  for (auto& t : P.terms()) {
    GaussianExpr img = psi;
    for (unsigned i = 0; i < t.dt && !img.is_zero(); ++i) img = img.diff(Var::t);
    for (unsigned i = 0; i < t.dx && !img.is_zero(); ++i) img = img.diff(Var::x);
    for (unsigned i = 0; i < t.dp && !img.is_zero(); ++i) img = img.diff(Var::p);
    out += t.coeff * img;
  }
  return out;
}

std::string GaussianExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.pre.str() << ") * exp(" << t.arg.str() << ")";
  }
  return os.str();
}

namespace {

// extract the contents of a balanced parenthesis group starting at s[i] == '('
std::string balanced_group(const std::string& s, size_t& i) {
  if (i >= s.size() || s[i] != '(') throw ParseError("expected (");
  int depth = 0;
  size_t start = ++i;
  for (; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') {
      if (depth == 0) {
        std::string inner = s.substr(start, i - start);
        ++i;
        return inner;
      }
      --depth;
    }
  }
  throw ParseError("unbalanced parentheses");
}

void skip_spaces(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

} // namespace

GaussianExpr GaussianExpr::parse(const std::string& text) {
  if (text.find("exp(") == std::string::npos) return GaussianExpr(ScalarExpr::parse(text));
  GaussianExpr out;
  size_t i = 0;
  while (true) {
    skip_spaces(text, i);
    std::string pre_text = balanced_group(text, i);
    skip_spaces(text, i);
    if (i >= text.size() || text[i] != '*') throw ParseError("expected * exp(...) after prefactor");
    ++i;
    skip_spaces(text, i);
    if (text.compare(i, 3, "exp") != 0) throw ParseError("expected exp(...)");
    i += 3;
    std::string arg_text = balanced_group(text, i);
    out += make(ScalarExpr::parse(pre_text), ScalarExpr::parse(arg_text));
    skip_spaces(text, i);
    if (i >= text.size()) break;
    if (text[i] != '+') throw ParseError("expected + between exponential groups");
    ++i;
  }
  return out;
}

} // namespace psde
