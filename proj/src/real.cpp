#include "pwsnf/real.hpp"

#include <algorithm>
#include <vector>

namespace pwsnf {

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.mpq().get_mpq_t(), rnd);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_const_pi(r.v_, rnd);
  return r;
}

std::string Real::str(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

// Raise precision in place so that the result of a binary op keeps the wider operand's bits.
static void widen(mpfr_t v, mpfr_prec_t p) {
  if (mpfr_get_prec(v) < p) mpfr_prec_round(v, p, MPFR_RNDN);
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  widen(v_, o.prec());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  widen(v_, o.prec());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  widen(v_, o.prec());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  widen(v_, o.prec());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(double d) {
  mpfr_mul_d(v_, v_, d, MPFR_RNDN);
  return *this;
}

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}
Real sqrt(const Real& a) {
  Real r(a);
  mpfr_sqrt(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}
Real exp(const Real& a) {
  Real r(a);
  mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}
Real log(const Real& a) {
  Real r(a);
  mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}
Real pow(const Real& a, long e) {
  Real r(a);
  mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace pwsnf
