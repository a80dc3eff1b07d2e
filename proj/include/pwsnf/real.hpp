#pragma once

#include <mpfr.h>

#include <string>

#include "pwsnf/rational.hpp"

namespace pwsnf {

// Owning MPFR float. Each value carries its own precision; binary operations
// produce a result at the larger of the operand precisions, rounded to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(double v, mpfr_prec_t prec);
  Real(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Scientific notation with the given number of significant digits.
  std::string str(int digits = 20) const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real& operator*=(double d);
  friend Real operator*(Real a, double d) { return a *= d; }
  friend Real operator*(double d, Real a) { return a *= d; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real pow(const Real& a, long e);
Real max(const Real& a, const Real& b);

}  // namespace pwsnf
