#ifndef PSDE_BIGFLOAT_HPP
#define PSDE_BIGFLOAT_HPP

#include <mpfr.h>
#include <string>
#include "psde/numbers.hpp"

namespace psde {

// Thin RAII wrapper around mpfr_t. Binary operations round at the wider
// of the two operand precisions; values are immutable in spirit (every
// operation returns a fresh value).
class BigFloat {
 public:
  explicit BigFloat(long prec = 128);
  BigFloat(double v, long prec);
  BigFloat(const Rat& v, long prec);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  long prec() const { return mpfr_get_prec(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  bool is_nan() const { return mpfr_nan_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }
  std::string str(int digits = 20) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat exp(const BigFloat& a);
  friend BigFloat log(const BigFloat& a);
  friend BigFloat cos(const BigFloat& a);
  friend BigFloat sinh(const BigFloat& a);
  friend BigFloat cosh(const BigFloat& a);
  friend BigFloat pow_long(const BigFloat& a, long e);

  static BigFloat pi(long prec);
  // 2^e as an error scale
  static BigFloat pow2(long e, long prec);

 private:
  mpfr_t x_;
};

} // namespace psde

#endif
