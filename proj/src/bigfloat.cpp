#include "psde/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace psde {

namespace {
long join_prec(const BigFloat& a, const BigFloat& b) {
  return std::max(a.prec(), b.prec());
}
} // namespace

BigFloat::BigFloat(long prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }

BigFloat::BigFloat(double v, long prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }

BigFloat::BigFloat(const Rat& v, long prec) {
  mpfr_init2(x_, prec);
  mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(x_, o.prec());
  mpfr_set(x_, o.x_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(x_, o.prec());
  mpfr_swap(x_, o.x_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(x_, o.prec());
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this != &o) mpfr_swap(x_, o.x_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(x_); }

std::string BigFloat::str(int digits) const {
  char buf[512];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, x_);
  return buf;
}

#define PSDE_BF_BINOP(opname, fn)                                  \
  BigFloat operator opname(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(join_prec(a, b));                                   \
    fn(r.x_, a.x_, b.x_, MPFR_RNDN);                               \
    return r;                                                      \
  }

PSDE_BF_BINOP(+, mpfr_add)
PSDE_BF_BINOP(-, mpfr_sub)
PSDE_BF_BINOP(*, mpfr_mul)
PSDE_BF_BINOP(/, mpfr_div)
#undef PSDE_BF_BINOP

BigFloat BigFloat::operator-() const {
  BigFloat r(prec());
  mpfr_neg(r.x_, x_, MPFR_RNDN);
  return r;
}

#define PSDE_BF_UNOP(name, fn)            \
  BigFloat name(const BigFloat& a) {      \
    BigFloat r(a.prec());                 \
    fn(r.x_, a.x_, MPFR_RNDN);            \
    return r;                             \
  }

PSDE_BF_UNOP(abs, mpfr_abs)
PSDE_BF_UNOP(sqrt, mpfr_sqrt)
PSDE_BF_UNOP(exp, mpfr_exp)
PSDE_BF_UNOP(log, mpfr_log)
PSDE_BF_UNOP(cos, mpfr_cos)
PSDE_BF_UNOP(sinh, mpfr_sinh)
PSDE_BF_UNOP(cosh, mpfr_cosh)
#undef PSDE_BF_UNOP

BigFloat pow_long(const BigFloat& a, long e) {
  BigFloat r(a.prec());
  mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(long prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.x_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow2(long e, long prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
  return r;
}

} // namespace psde
