#include "psde/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace psde {

// ---------------------------------------------------------------------------
// small number helpers
// ---------------------------------------------------------------------------

std::pair<Int, Int> sqrt_reduce(const Int& n) {
  if (n <= 0) throw std::domain_error("sqrt_reduce needs a positive integer");
  Int outside = 1, inside = n;
  for (Int d = 2;; ++d) {
    if (d * d > inside) break;
    Int dd = d * d;
    while (mpz_divisible_p(inside.get_mpz_t(), dd.get_mpz_t())) {
      inside /= dd;
      outside *= d;
    }
    if (d > 100000) {  // inputs here come from small shift arithmetic
      if (mpz_perfect_square_p(inside.get_mpz_t())) {
        Int root;
        mpz_sqrt(root.get_mpz_t(), inside.get_mpz_t());
        outside *= root;
        inside = 1;
      }
      break;
    }
  }
  return {outside, inside};
}

Coeff coeff_sqrt(const Rat& r) {
  if (r == 0) return Coeff();
  if (r < 0) throw NegativeBaseFractionalPower("sqrt of negative rational");
  // sqrt(a/b) = sqrt(a*b)/b
  Int ab = r.get_num() * r.get_den();
  auto [outside, inside] = sqrt_reduce(ab);
  Rat q(outside, r.get_den());
  q.canonicalize();
  return Coeff(q, inside);
}

Coeff coeff_pow(const Rat& r, const Rat& e) {
  if (is_integer(e)) return Coeff(rat_pow(r, to_long(e)));
  if (!is_half(e)) throw std::invalid_argument("exponent denominator must be 1 or 2");
  if (r <= 0) throw NegativeBaseFractionalPower("fractional power of nonpositive rational");
  long n = floor_half(e);
  return Coeff(rat_pow(r, n)) * coeff_sqrt(r);
}

double to_double(const Rat& r) { return r.get_d(); }

std::string rat_to_string(const Rat& r) { return r.get_str(); }

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational");
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational: " + s);
  }
}

// ---------------------------------------------------------------------------
// orderings
// ---------------------------------------------------------------------------

bool operator==(const RadFactor& a, const RadFactor& b) {
  return a.desc == b.desc && a.root == b.root;
}
bool operator<(const RadFactor& a, const RadFactor& b) {
  int c = cmp(a.root, b.root);
  if (c != 0) return c < 0;
  return a.desc < b.desc;
}

bool operator==(const TBase& a, const TBase& b) {
  if (a.pow != b.pow) return false;
  return a.pow >= 0 || a.root == b.root;
}
bool operator<(const TBase& a, const TBase& b) {
  bool ap = a.pow < 0, bp = b.pow < 0;
  if (ap != bp) return ap < bp;  // monomials before poles
  if (!ap) return a.pow < b.pow;
  int c = cmp(a.root, b.root);
  if (c != 0) return c < 0;
  return a.pow > b.pow;
}

bool operator==(const ScalarTerm& a, const ScalarTerm& b) {
  return a.c == b.c && a.pi_e == b.pi_e && a.xdeg == b.xdeg && a.pdeg == b.pdeg && a.tb == b.tb &&
         a.rads == b.rads;
}

struct ScalarTermKey {
  unsigned xdeg = 0, pdeg = 0;
  Rat pi_e;
  Int m;
  std::vector<RadFactor> rads;
  TBase tb;

  bool operator<(const ScalarTermKey& o) const {
    if (xdeg != o.xdeg) return xdeg < o.xdeg;
    if (pdeg != o.pdeg) return pdeg < o.pdeg;
    int c = cmp(pi_e, o.pi_e);
    if (c != 0) return c < 0;
    c = cmp(m, o.m);
    if (c != 0) return c < 0;
    if (!(rads == o.rads))
      return std::lexicographical_compare(rads.begin(), rads.end(), o.rads.begin(), o.rads.end());
    if (!(tb == o.tb)) return tb < o.tb;
    return false;
  }
};

struct ScalarAccum {
  std::map<ScalarTermKey, Rat> sums;
  void add(ScalarTermKey k, const Rat& v) {
    if (v == 0) return;
    auto [it, fresh] = sums.emplace(std::move(k), v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) sums.erase(it);
    }
  }
  void add_term(const ScalarTerm& t, const Rat& scale = Rat(1)) {
    if (scale == 0) return;
    ScalarTermKey key;
    key.xdeg = t.xdeg;
    key.pdeg = t.pdeg;
    key.pi_e = t.pi_e;
    key.m = t.c.m;
    key.rads = t.rads;
    key.tb = t.tb;
    add(std::move(key), t.c.q * scale);
  }
};

// ---------------------------------------------------------------------------
// dense rational polynomials in t and partial fractions
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<Rat>;  // poly[k] is the t^k coefficient, no trailing zeros

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void poly_sub_inplace(Poly& a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  poly_trim(a);
}

Rat poly_eval(const Poly& p, const Rat& t) {
  Rat v(0);
  for (size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

// multiply by (t - r)
Poly poly_mul_linear(const Poly& p, const Rat& r) {
  if (p.empty()) return {};
  Poly out(p.size() + 1, Rat(0));
  for (size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= r * p[i];
  }
  poly_trim(out);
  return out;
}

// exact division by (t - r); caller guarantees p(r) == 0
Poly poly_div_linear(const Poly& p, const Rat& r) {
  if (p.empty()) return {};
  Poly out(p.size() - 1, Rat(0));
  Rat carry(0);
  for (size_t i = p.size(); i-- > 1;) {
    carry = p[i] + carry * r;
    out[i - 1] = carry;
  }
  return out;
}

struct RatCmp {
  bool operator()(const Rat& a, const Rat& b) const { return cmp(a, b) < 0; }
};

using DenMap = std::map<Rat, long, RatCmp>;

std::vector<std::pair<TBase, Rat>> partial_fractions(Poly num, DenMap den) {
  std::vector<std::pair<TBase, Rat>> out;
  while (!den.empty() && !num.empty()) {
    auto it = den.begin();
    const Rat r = it->first;
    // principal coefficient of (t-r)^{-m}: num(r) / prod_{r'!=r} (r-r')^{m'}
    Rat cof(1);
    for (auto& [r2, m2] : den)
      if (!(r2 == r)) cof *= rat_pow(r - r2, m2);
    Rat c = poly_eval(num, r) / cof;
    if (c != 0) {
      TBase tb;
      tb.pow = -it->second;
      tb.root = r;
      out.push_back({tb, c});
      Poly cpoly = {c};
      for (auto& [r2, m2] : den)
        if (!(r2 == r))
          for (long k = 0; k < m2; ++k) cpoly = poly_mul_linear(cpoly, r2);
      poly_sub_inplace(num, cpoly);
    }
    if (!num.empty()) num = poly_div_linear(num, r);
    if (--it->second == 0) den.erase(it);
  }
  for (size_t k = 0; k < num.size(); ++k) {
    if (num[k] == 0) continue;
    TBase tb;
    tb.pow = static_cast<long>(k);
    out.push_back({tb, num[k]});
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// term builder: canonicalizes one product of factors
// ---------------------------------------------------------------------------

class TermBuilder {
 public:
  Coeff c{Rat(1)};
  Rat pi_e{0};
  unsigned xdeg = 0, pdeg = 0;

  void mul_coeff(const Coeff& k) { c = c * k; }

  void add_factor(const Rat& root_in, const Rat& e_in, bool desc) {
    const Rat root = canonical(root_in);
    const Rat e = canonical(e_in);
    if (e == 0 || c.is_zero()) return;
    long n = floor_half(e);
    bool has_half = is_half(e);
    auto& st = factors_[root];
    if (desc && n % 2 != 0) c.q = -c.q;  // (r-t)^n = (-1)^n (t-r)^n
    st.int_exp += n;
    if (has_half) merge_half(st, desc ? -1 : +1, root);
  }

  void add_term_factors(const ScalarTerm& t) {
    if (t.tb.pow > 0) add_factor(Rat(0), Rat(t.tb.pow), false);
    else if (t.tb.pow < 0) add_factor(t.tb.root, Rat(t.tb.pow), false);
    for (auto& r : t.rads) add_factor(r.root, Rat(1, 2), r.desc);
  }

  void emit(ScalarAccum& acc) const {
    if (c.is_zero()) return;
    Poly num = {c.q};
    DenMap den;
    std::vector<RadFactor> rads;
    for (auto& [root, st] : factors_) {
      if (st.int_exp > 0)
        for (long k = 0; k < st.int_exp; ++k) num = poly_mul_linear(num, root);
      else if (st.int_exp < 0)
        den[root] = -st.int_exp;
      if (st.half != 0) rads.push_back({root, st.half < 0});
    }
    for (auto& [tb, v] : partial_fractions(std::move(num), std::move(den))) {
      ScalarTermKey key;
      key.xdeg = xdeg;
      key.pdeg = pdeg;
      key.pi_e = pi_e;
      key.m = c.m;
      key.rads = rads;
      key.tb = tb;
      acc.add(std::move(key), v);
    }
  }

  static TermBuilder from_term(const ScalarTerm& t) {
    TermBuilder b;
    b.c = t.c;
    b.pi_e = t.pi_e;
    b.xdeg = t.xdeg;
    b.pdeg = t.pdeg;
    b.add_term_factors(t);
    return b;
  }

  static ScalarExpr finish(ScalarAccum&& acc) {
    ScalarExpr out;
    out.terms_.reserve(acc.sums.size());
    for (auto& [key, q] : acc.sums) {
      ScalarTerm t;
      t.c = Coeff(q, key.m);
      t.pi_e = key.pi_e;
      t.xdeg = key.xdeg;
      t.pdeg = key.pdeg;
      t.tb = key.tb;
      t.rads = key.rads;
      out.terms_.push_back(std::move(t));
    }
    return out;
  }

 private:
  struct FactorState {
    long int_exp = 0;
    int half = 0;  // 0 none, +1 ascending, -1 descending
  };

  void merge_half(FactorState& st, int dir, const Rat& root) {
    if (st.half == 0) {
      st.half = dir;
      return;
    }
    if (st.half != dir)
      throw SubstitutionOutOfFamily("imaginary radical: sqrt(t-r)*sqrt(r-t) at root " +
                                    rat_to_string(root));
    st.half = 0;
    st.int_exp += 1;
    if (dir < 0) c.q = -c.q;  // sqrt(r-t)^2 = (r-t) = -(t-r)
  }

  std::map<Rat, FactorState, RatCmp> factors_;
};

// ---------------------------------------------------------------------------
// ScalarExpr basics
// ---------------------------------------------------------------------------

ScalarExpr::ScalarExpr(const Rat& v) {
  if (v != 0) {
    ScalarTerm t;
    t.c = Coeff(v);
    t.pi_e = 0;
    terms_.push_back(std::move(t));
  }
}

ScalarExpr::ScalarExpr(long v) : ScalarExpr(Rat(v)) {}

ScalarExpr ScalarExpr::variable(Var v) {
  ScalarTerm t;
  t.c = Coeff(Rat(1));
  t.pi_e = 0;
  switch (v) {
    case Var::x: t.xdeg = 1; break;
    case Var::p: t.pdeg = 1; break;
    case Var::t: t.tb.pow = 1; break;
  }
  ScalarExpr e;
  e.terms_.push_back(std::move(t));
  return e;
}

ScalarExpr ScalarExpr::pi_power(const Rat& e_in) {
  const Rat e = canonical(e_in);
  if (!is_integer(e) && !is_half(e))
    throw std::invalid_argument("pi exponent denominator must be 1 or 2");
  ScalarTerm t;
  t.c = Coeff(Rat(1));
  t.pi_e = e;
  ScalarExpr out;
  out.terms_.push_back(std::move(t));
  return out;
}

ScalarExpr ScalarExpr::linear_power(const Rat& root, const Rat& e, bool desc) {
  return term(Coeff(Rat(1)), Rat(0), 0, 0, {{root, e, desc}});
}

ScalarExpr ScalarExpr::linear_comb_power(const Rat& a, const Rat& c, const Rat& e) {
  if (a == 0) {
    if (c < 0 && is_half(e))
      throw NegativeBaseFractionalPower("fractional power of a negative constant");
    if (c == 0) return e == 0 ? ScalarExpr(Rat(1)) : ScalarExpr();
    ScalarExpr out;
    Coeff k = coeff_pow(c, e);
    return term(k, Rat(0), 0, 0, {});
  }
  Rat mult = a < 0 ? Rat(-a) : a;
  return term(coeff_pow(mult, e), Rat(0), 0, 0, {{Rat(-c / a), e, a < 0}});
}

ScalarExpr ScalarExpr::term(const Coeff& c, const Rat& pi_e_in, unsigned xdeg, unsigned pdeg,
                            const std::vector<std::tuple<Rat, Rat, bool>>& factors) {
  const Rat pi_e = canonical(pi_e_in);
  if (!is_integer(pi_e) && !is_half(pi_e))
    throw std::invalid_argument("pi exponent denominator must be 1 or 2");
  TermBuilder b;
  b.c = c;
  b.pi_e = pi_e;
  b.xdeg = xdeg;
  b.pdeg = pdeg;
  for (auto& [root, e, desc] : factors) {
    const Rat ec = canonical(e);
    if (!is_integer(ec) && !is_half(ec))
      throw std::invalid_argument("factor exponent denominator must be 1 or 2");
    b.add_factor(root, ec, desc);
  }
  ScalarAccum acc;
  b.emit(acc);
  return TermBuilder::finish(std::move(acc));
}

bool ScalarExpr::depends_on(Var v) const {
  for (auto& t : terms_) {
    switch (v) {
      case Var::x:
        if (t.xdeg > 0) return true;
        break;
      case Var::p:
        if (t.pdeg > 0) return true;
        break;
      case Var::t:
        if (t.tb.pow != 0 || !t.rads.empty()) return true;
        break;
    }
  }
  return false;
}

unsigned ScalarExpr::xp_degree() const {
  unsigned d = 0;
  for (auto& t : terms_) d = std::max(d, t.xdeg + t.pdeg);
  return d;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  ScalarAccum acc;
  for (auto& t : terms_) acc.add_term(t);
  for (auto& t : o.terms_) acc.add_term(t);
  *this = TermBuilder::finish(std::move(acc));
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
  ScalarAccum acc;
  for (auto& t : terms_) acc.add_term(t);
  for (auto& t : o.terms_) acc.add_term(t, Rat(-1));
  *this = TermBuilder::finish(std::move(acc));
  return *this;
}

ScalarExpr ScalarExpr::operator-() const {
  ScalarExpr out = *this;
  for (auto& t : out.terms_) t.c.q = -t.c.q;
  return out;
}

ScalarExpr& ScalarExpr::operator*=(const ScalarExpr& o) {
  ScalarAccum acc;
  for (auto& a : terms_) {
    for (auto& b : o.terms_) {
      TermBuilder bl = TermBuilder::from_term(a);
      bl.mul_coeff(b.c);
      bl.pi_e += b.pi_e;
      bl.xdeg += b.xdeg;
      bl.pdeg += b.pdeg;
      bl.add_term_factors(b);
      bl.emit(acc);
    }
  }
  *this = TermBuilder::finish(std::move(acc));
  return *this;
}

ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
ScalarExpr operator*(ScalarExpr a, const ScalarExpr& b) { return a *= b; }
ScalarExpr operator*(const Rat& k, ScalarExpr a) { return a *= ScalarExpr(k); }

ScalarExpr pow(const ScalarExpr& a, unsigned n) {
  ScalarExpr out{Rat(1)};
  ScalarExpr acc = a;
  unsigned e = n;
  while (e) {
    if (e & 1u) out *= acc;
    e >>= 1;
    if (e) acc *= acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// calculus
// ---------------------------------------------------------------------------

ScalarExpr ScalarExpr::diff(Var v) const {
  ScalarAccum acc;
  for (auto& t : terms_) {
    if (v == Var::x) {
      if (t.xdeg == 0) continue;
      ScalarTerm d = t;
      d.c.q *= t.xdeg;
      d.xdeg -= 1;
      acc.add_term(d);
    } else if (v == Var::p) {
      if (t.pdeg == 0) continue;
      ScalarTerm d = t;
      d.c.q *= t.pdeg;
      d.pdeg -= 1;
      acc.add_term(d);
    } else {
      // d/dt of prod (t-r)^e is  sum_f e_f (t-r_f)^{-1} * (the product);
      // the same form holds for descending radicals
      auto emit_part = [&](const Rat& root, const Rat& e) {
        TermBuilder b = TermBuilder::from_term(t);
        b.mul_coeff(Coeff(e));
        b.add_factor(root, Rat(-1), false);
        b.emit(acc);
      };
      if (t.tb.pow > 0) emit_part(Rat(0), Rat(t.tb.pow));
      else if (t.tb.pow < 0) emit_part(t.tb.root, Rat(t.tb.pow));
      for (auto& r : t.rads) emit_part(r.root, Rat(1, 2));
    }
  }
  return TermBuilder::finish(std::move(acc));
}

ScalarExpr ScalarExpr::antiderivative_t() const {
  ScalarAccum acc;
  // one power of the oriented base B = (t-r) or (r-t):
  // int c*B^e dt = c*s*B^{e+1}/(e+1), s = +1 ascending, -1 descending
  auto emit_power = [&acc](const Coeff& c, const Rat& pi_e, const Rat& root, const Rat& e,
                           bool desc) {
    TermBuilder b;
    b.c = c;
    b.pi_e = pi_e;
    Rat scale = Rat(1) / (e + 1);
    if (desc) scale = -scale;
    b.mul_coeff(Coeff(scale));
    b.add_factor(root, e + 1, desc);
    b.emit(acc);
  };
  for (auto& t : terms_) {
    if (t.xdeg || t.pdeg)
      throw NonIntegrableInFamily("antiderivative requires a t-only expression");
    if (t.rads.size() > 1)
      throw NonIntegrableInFamily("multi-radical term has no antiderivative in the family");

    if (t.rads.empty()) {
      if (t.tb.pow >= 0) {
        emit_power(t.c, t.pi_e, Rat(0), Rat(t.tb.pow), false);
      } else {
        if (t.tb.pow == -1) throw NonIntegrableInFamily("logarithmic antiderivative");
        emit_power(t.c, t.pi_e, t.tb.root, Rat(t.tb.pow), false);
      }
      continue;
    }

    const RadFactor rad = t.rads[0];
    if (t.tb.pow < 0) {
      if (!(t.tb.root == rad.root))
        throw NonIntegrableInFamily("radical and pole at different roots");
      Coeff c = t.c;
      long j = -t.tb.pow;
      if (rad.desc && j % 2 != 0) c.q = -c.q;  // (t-r)^{-j} = (-1)^j (r-t)^{-j}
      emit_power(c, t.pi_e, rad.root, Rat(t.tb.pow) + Rat(1, 2), rad.desc);
      continue;
    }
    // monomial t^k times a radical: expand t^k around the radical root
    long k = t.tb.pow;
    for (long j = 0; j <= k; ++j) {
      Coeff c = t.c;
      Rat w = Rat(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) *
              rat_pow(rad.root, k - j);
      if (rad.desc && j % 2 != 0) w = -w;  // t = r - (r-t)
      c.q *= w;
      if (c.q == 0) continue;
      emit_power(c, t.pi_e, rad.root, Rat(j) + Rat(1, 2), rad.desc);
    }
  }
  return TermBuilder::finish(std::move(acc));
}

// ---------------------------------------------------------------------------
// substitution
// ---------------------------------------------------------------------------

Substitution Substitution::identity() { return Substitution{}; }

Substitution Substitution::t_shift(const Rat& lambda) {
  Substitution s;
  s.tmap = TMap::shift;
  s.tparam = canonical(lambda);
  return s;
}

Substitution Substitution::t_scale(const Rat& sc) {
  if (sc <= 0) throw SubstitutionOutOfFamily("t scale must be positive");
  Substitution s;
  s.tmap = TMap::scale;
  s.tparam = canonical(sc);
  return s;
}

Substitution Substitution::t_moebius(const Rat& lambda) {
  Substitution s;
  s.tmap = TMap::moebius;
  s.tparam = canonical(lambda);
  return s;
}

Substitution Substitution::t_invert() {
  Substitution s;
  s.tmap = TMap::invert;
  return s;
}

Substitution Substitution::exchange() {
  Substitution s = t_invert();
  s.xx = ScalarExpr(0);
  s.xp = ScalarExpr(1);
  s.px = ScalarExpr(1);
  s.pp = ScalarExpr(0);
  return s;
}

namespace {

struct Linear {  // a*t + c
  Rat a, c;
};

void tmap_fraction(const Substitution& s, Linear& nf, Linear& df) {
  switch (s.tmap) {
    case Substitution::TMap::identity: nf = {Rat(1), Rat(0)}; df = {Rat(0), Rat(1)}; break;
    case Substitution::TMap::shift: nf = {Rat(1), s.tparam}; df = {Rat(0), Rat(1)}; break;
    case Substitution::TMap::scale: nf = {s.tparam, Rat(0)}; df = {Rat(0), Rat(1)}; break;
    case Substitution::TMap::moebius: nf = {Rat(1), Rat(0)}; df = {s.tparam, Rat(1)}; break;
    case Substitution::TMap::invert: nf = {Rat(0), Rat(1)}; df = {Rat(1), Rat(0)}; break;
  }
}

void apply_linear_power(TermBuilder& b, const Linear& lin, const Rat& e) {
  if (e == 0) return;
  if (lin.a == 0) {
    if (lin.c == 0) throw SubstitutionOutOfFamily("degenerate t-map");
    if (lin.c < 0 && is_half(e))
      throw SubstitutionOutOfFamily("fractional power of a negative constant");
    b.mul_coeff(coeff_pow(lin.c, e));
    return;
  }
  Rat mult = lin.a < 0 ? Rat(-lin.a) : lin.a;
  Rat root = -lin.c / lin.a;
  b.mul_coeff(coeff_pow(mult, e));
  b.add_factor(root, e, lin.a < 0);
}

} // namespace

ScalarExpr ScalarExpr::subst(const Substitution& s) const {
  for (const ScalarExpr* c : {&s.xx, &s.xp, &s.x0, &s.px, &s.pp, &s.p0})
    if (!c->is_t_only())
      throw SubstitutionOutOfFamily("coordinate replacement coefficients must be t-only");

  Linear nf{}, df{};
  tmap_fraction(s, nf, df);

  // maps a t-only expression through the t-map
  auto map_tonly = [&](const ScalarExpr& e) {
    ScalarAccum acc;
    for (auto& t : e.terms_) {
      TermBuilder b;
      b.c = t.c;
      b.pi_e = t.pi_e;
      b.xdeg = t.xdeg;
      b.pdeg = t.pdeg;
      auto map_factor = [&](const Rat& root, const Rat& exp, bool desc) {
        Rat o = desc ? Rat(-1) : Rat(1);
        Linear l1{o * (nf.a - root * df.a), o * (nf.c - root * df.c)};
        apply_linear_power(b, l1, exp);
        apply_linear_power(b, df, -exp);
      };
      if (t.tb.pow > 0) map_factor(Rat(0), Rat(t.tb.pow), false);
      else if (t.tb.pow < 0) map_factor(t.tb.root, Rat(t.tb.pow), false);
      for (auto& r : t.rads) map_factor(r.root, Rat(1, 2), r.desc);
      b.emit(acc);
    }
    return TermBuilder::finish(std::move(acc));
  };

  // the image is f(X, P, T(t)) with X, P expressed in the original
  // coordinates; only the t-dependence inside f goes through the t-map
  const ScalarExpr xvar = variable(Var::x), pvar = variable(Var::p);
  ScalarExpr xrep = s.xx * xvar + s.xp * pvar + s.x0;
  ScalarExpr prep = s.px * xvar + s.pp * pvar + s.p0;

  unsigned maxx = 0, maxp = 0;
  for (auto& t : terms_) {
    maxx = std::max(maxx, t.xdeg);
    maxp = std::max(maxp, t.pdeg);
  }
  std::vector<ScalarExpr> xpows{ScalarExpr(Rat(1))}, ppows{ScalarExpr(Rat(1))};
  for (unsigned i = 1; i <= maxx; ++i) xpows.push_back(xpows.back() * xrep);
  for (unsigned j = 1; j <= maxp; ++j) ppows.push_back(ppows.back() * prep);

  ScalarExpr out;
  for (auto& t : terms_) {
    ScalarTerm base = t;
    base.xdeg = 0;
    base.pdeg = 0;
    ScalarExpr tmp;
    tmp.terms_.push_back(base);
    out += map_tonly(tmp) * xpows[t.xdeg] * ppows[t.pdeg];
  }
  return out;
}

ScalarExpr ScalarExpr::eval_t(const Rat& t0) const {
  ScalarAccum acc;
  for (auto& t : terms_) {
    Coeff c = t.c;
    if (t.tb.pow > 0) {
      c.q *= rat_pow(t0, t.tb.pow);
    } else if (t.tb.pow < 0) {
      Rat base = t0 - t.tb.root;
      if (base == 0) throw SingularEvaluation("pole at t = " + rat_to_string(t0));
      c.q *= rat_pow(base, t.tb.pow);
    }
    bool vanished = false;
    for (auto& r : t.rads) {
      Rat v = r.desc ? Rat(r.root - t0) : Rat(t0 - r.root);
      if (v < 0)
        throw NegativeBaseFractionalPower("sqrt of negative value at t = " + rat_to_string(t0));
      if (v == 0) {
        vanished = true;
        break;
      }
      c = c * coeff_sqrt(v);
    }
    if (vanished || c.is_zero()) continue;
    ScalarTerm nt;
    nt.c = c;
    nt.pi_e = t.pi_e;
    nt.xdeg = t.xdeg;
    nt.pdeg = t.pdeg;
    acc.add_term(nt);
  }
  return TermBuilder::finish(std::move(acc));
}

BigFloat ScalarExpr::eval(const BigFloat& x, const BigFloat& p, const BigFloat& t,
                          long prec_bits) const {
  long guard = 32;
  for (size_t n = terms_.size(); n > 0; n >>= 1) ++guard;
  const long wp = prec_bits + guard;
  BigFloat sum(wp);
  for (auto& term : terms_) {
    BigFloat v(term.c.q, wp);
    if (term.c.m != 1) v = v * sqrt(BigFloat(Rat(term.c.m), wp));
    if (term.pi_e != 0) {
      BigFloat pi = BigFloat::pi(wp);
      long num = 0;
      if (!term.pi_e.get_num().fits_slong_p()) throw std::overflow_error("pi exponent too large");
      num = term.pi_e.get_num().get_si();
      BigFloat base = term.pi_e.get_den() == 2 ? sqrt(pi) : pi;
      v = v * pow_long(base, num);
    }
    if (term.xdeg) v = v * pow_long(x, term.xdeg);
    if (term.pdeg) v = v * pow_long(p, term.pdeg);
    if (term.tb.pow > 0) {
      v = v * pow_long(t, term.tb.pow);
    } else if (term.tb.pow < 0) {
      BigFloat base = t - BigFloat(term.tb.root, wp);
      if (base.sign() == 0) throw SingularEvaluation("pole hit during evaluation");
      v = v * pow_long(base, term.tb.pow);
    }
    for (auto& r : term.rads) {
      BigFloat base = r.desc ? BigFloat(r.root, wp) - t : t - BigFloat(r.root, wp);
      if (base.sign() < 0)
        throw NegativeBaseFractionalPower("sqrt of negative base during evaluation");
      v = v * sqrt(base);
    }
    sum = sum + v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// printing and parsing
// ---------------------------------------------------------------------------

namespace {

// per-root merged view of the t-part; descending radicals absorb ascending
// integer exponents so (t-r)^-1 * sqrt(r-t) prints as (r-t)^-1/2
struct TPiece {
  Rat root;
  Rat e;
  bool desc;
};

std::vector<TPiece> merge_tpart(const ScalarTerm& t, int& sign) {
  std::vector<TPiece> pieces;
  auto add = [&](const Rat& root, const Rat& e, bool desc) {
    for (auto& pc : pieces) {
      if (!(pc.root == root)) continue;
      if (pc.desc != desc) {
        long n = to_long(pc.e);
        if (n % 2 != 0) sign = -sign;
        pc.desc = true;
      }
      pc.e += e;
      return;
    }
    pieces.push_back({root, e, desc});
  };
  if (t.tb.pow > 0) add(Rat(0), Rat(t.tb.pow), false);
  else if (t.tb.pow < 0) add(t.tb.root, Rat(t.tb.pow), false);
  for (auto& r : t.rads) add(r.root, Rat(1, 2), r.desc);
  return pieces;
}

} // namespace

std::string ScalarExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (auto& t : terms_) {
    int sign = 1;
    std::vector<TPiece> pieces = merge_tpart(t, sign);

    std::ostringstream body;
    bool body_first = true;
    auto sep = [&]() {
      if (!body_first) body << " * ";
      body_first = false;
    };

    Rat q = t.c.q * sign;
    bool neg = q < 0;
    Rat mag = neg ? Rat(-q) : q;

    bool only_coeff = t.c.m == 1 && t.pi_e == 0 && t.xdeg == 0 && t.pdeg == 0 && pieces.empty();
    if (!(mag == 1) || only_coeff) {
      sep();
      body << rat_to_string(mag);
    }
    if (t.c.m != 1) {
      sep();
      body << "sqrt(" << t.c.m.get_str() << ")";
    }
    if (t.pi_e != 0) {
      sep();
      body << "pi";
      if (t.pi_e != 1) body << "^" << rat_to_string(t.pi_e);
    }
    if (t.xdeg) {
      sep();
      body << "x";
      if (t.xdeg > 1) body << "^" << t.xdeg;
    }
    if (t.pdeg) {
      sep();
      body << "p";
      if (t.pdeg > 1) body << "^" << t.pdeg;
    }
    for (auto& pc : pieces) {
      if (pc.e == 0) continue;
      sep();
      if (pc.root == 0 && !pc.desc) body << "t";
      else if (pc.desc) body << "(" << rat_to_string(pc.root) << "-t)";
      else if (pc.root < 0) body << "(t+" << rat_to_string(Rat(-pc.root)) << ")";
      else body << "(t-" << rat_to_string(pc.root) << ")";
      if (pc.e != 1) body << "^" << rat_to_string(pc.e);
    }

    if (first_term) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    os << body.str();
    first_term = false;
  }
  return os.str();
}

namespace {

struct Lexer {
  std::string s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(i, w.size(), w) == 0) {
      i += w.size();
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  std::string digits() {
    skip_ws();
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw ParseError("expected digits at position " + std::to_string(i));
    std::string out = s.substr(i, j - i);
    i = j;
    return out;
  }
  Rat unsigned_rational() {
    std::string num = digits();
    if (eat('/')) return parse_rational(num + "/" + digits());
    return parse_rational(num);
  }
  Rat exponent() {
    skip_ws();
    bool neg = eat('-');
    Rat e = unsigned_rational();
    if (!is_integer(e) && !is_half(e)) throw ParseError("exponent denominator must be 1 or 2");
    return neg ? Rat(-e) : e;
  }
};

// inside parens: "t+b", "t-b" or "r-t"
std::pair<Rat, bool> parse_linear(Lexer& lx) {
  if (lx.eat_word("t")) {
    if (lx.eat('+')) {
      Rat b = lx.unsigned_rational();
      if (!lx.eat(')')) throw ParseError("expected ) in linear factor");
      return {Rat(-b), false};
    }
    if (lx.eat('-')) {
      Rat b = lx.unsigned_rational();
      if (!lx.eat(')')) throw ParseError("expected ) in linear factor");
      return {b, false};
    }
    throw ParseError("expected + or - in linear factor");
  }
  Rat r = lx.unsigned_rational();
  if (!lx.eat('-') || !lx.eat_word("t") || !lx.eat(')')) throw ParseError("expected (r-t) form");
  return {r, true};
}

} // namespace

ScalarExpr ScalarExpr::parse(const std::string& text) {
  Lexer lx{text};
  ScalarExpr out;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (first) {
      if (lx.eat('-')) sign = -1;
    } else if (lx.eat('-')) {
      sign = -1;
    } else if (!lx.eat('+')) {
      throw ParseError("expected + or - between terms");
    }
    first = false;

    TermBuilder b;
    b.c = Coeff(Rat(sign));
    bool more = true;
    while (more) {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        b.mul_coeff(Coeff(lx.unsigned_rational()));
      } else if (lx.eat_word("sqrt(")) {
        Rat n = lx.unsigned_rational();
        if (!lx.eat(')')) throw ParseError("expected ) after sqrt");
        if (!is_integer(n)) throw ParseError("sqrt argument must be an integer");
        b.mul_coeff(coeff_sqrt(n));
      } else if (lx.eat_word("pi")) {
        Rat e(1);
        if (lx.eat('^')) e = lx.exponent();
        if (!is_integer(e) && !is_half(e)) throw ParseError("pi exponent denominator must be 1 or 2");
        b.pi_e += e;
      } else if (lx.eat_word("x")) {
        long e = 1;
        if (lx.eat('^')) e = to_long(lx.exponent());
        if (e < 0) throw ParseError("negative x power");
        b.xdeg += static_cast<unsigned>(e);
      } else if (lx.eat_word("p")) {
        long e = 1;
        if (lx.eat('^')) e = to_long(lx.exponent());
        if (e < 0) throw ParseError("negative p power");
        b.pdeg += static_cast<unsigned>(e);
      } else if (lx.eat_word("t")) {
        Rat e(1);
        if (lx.eat('^')) e = lx.exponent();
        b.add_factor(Rat(0), e, false);
      } else if (lx.eat('(')) {
        auto [root, desc] = parse_linear(lx);
        Rat e(1);
        if (lx.eat('^')) e = lx.exponent();
        b.add_factor(root, e, desc);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'");
      }
      more = lx.eat('*');
    }
    ScalarAccum acc;
    b.emit(acc);
    out += TermBuilder::finish(std::move(acc));
  }
  return out;
}

} // namespace psde
