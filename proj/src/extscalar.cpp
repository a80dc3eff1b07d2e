#include "pwsnf/extscalar.hpp"

#include <cmath>

namespace pwsnf {
namespace {

// Closed interval with outward-rounded endpoints.
struct Iv {
  Real lo, hi;
  explicit Iv(mpfr_prec_t p) : lo(p), hi(p) {}
};

Iv iv_rational(const Rational& q, mpfr_prec_t p) {
  Iv r(p);
  r.lo = Real(q, p, MPFR_RNDD);
  r.hi = Real(q, p, MPFR_RNDU);
  return r;
}

Iv iv_pi(mpfr_prec_t p) {
  Iv r(p);
  r.lo = Real::pi(p, MPFR_RNDD);
  r.hi = Real::pi(p, MPFR_RNDU);
  return r;
}

Iv iv_mul(const Iv& a, const Iv& b, mpfr_prec_t p) {
  Real c[4] = {Real(p), Real(p), Real(p), Real(p)};
  Iv r(p);
  const Real* as[2] = {&a.lo, &a.hi};
  const Real* bs[2] = {&b.lo, &b.hi};
  for (int down = 0; down < 2; ++down) {
    mpfr_rnd_t rnd = down ? MPFR_RNDD : MPFR_RNDU;
    for (int i = 0; i < 4; ++i) mpfr_mul(c[i].raw(), as[i / 2]->raw(), bs[i % 2]->raw(), rnd);
    Real best = c[0];
    for (int i = 1; i < 4; ++i)
      if (down ? c[i] < best : c[i] > best) best = c[i];
    (down ? r.lo : r.hi) = best;
  }
  return r;
}

Iv iv_add(const Iv& a, const Iv& b, mpfr_prec_t p) {
  Iv r(p);
  mpfr_add(r.lo.raw(), a.lo.raw(), b.lo.raw(), MPFR_RNDD);
  mpfr_add(r.hi.raw(), a.hi.raw(), b.hi.raw(), MPFR_RNDU);
  return r;
}

// Integer power of a strictly positive interval.
Iv iv_pos_pow(const Iv& a, long e, mpfr_prec_t p) {
  Iv r(p);
  if (e >= 0) {
    mpfr_pow_si(r.lo.raw(), a.lo.raw(), e, MPFR_RNDD);
    mpfr_pow_si(r.hi.raw(), a.hi.raw(), e, MPFR_RNDU);
  } else {
    mpfr_pow_si(r.lo.raw(), a.hi.raw(), e, MPFR_RNDD);
    mpfr_pow_si(r.hi.raw(), a.lo.raw(), e, MPFR_RNDU);
  }
  return r;
}

Enclosure eval_at(const ExtScalar& s, mpfr_prec_t p) {
  Iv pi = iv_pi(p);
  Iv gpi = iv_mul(iv_rational(s.gamma1(), p), pi, p);
  Iv E(p);
  mpfr_exp(E.lo.raw(), gpi.lo.raw(), MPFR_RNDD);
  mpfr_exp(E.hi.raw(), gpi.hi.raw(), MPFR_RNDU);
  Iv sum = iv_rational(0, p);
  for (const auto& [k, q] : s.terms()) {
    Iv t = iv_mul(iv_rational(q, p), iv_pos_pow(pi, k.first, p), p);
    t = iv_mul(t, iv_pos_pow(E, k.second, p), p);
    sum = iv_add(sum, t, p);
  }
  return Enclosure{sum.lo, sum.hi};
}

}  // namespace

Enclosure ext_eval(const ExtScalar& s, int digits) {
  if (digits < 15) digits = 15;
  const auto bits_for = [](int d) { return static_cast<mpfr_prec_t>(std::ceil(d * 3.3219280948873623)) + 64; };
  mpfr_prec_t p = bits_for(digits + 12);
  Real pad = pow(Real(10.0, p), -digits);
  Real tight = pow(Real(10.0, p), -(digits + 10));
  for (;;) {
    Enclosure raw = eval_at(s, p);
    if (raw.width() <= tight) {
      Enclosure out{Real(p), Real(p)};
      mpfr_sub(out.lo.raw(), raw.lo.raw(), pad.raw(), MPFR_RNDD);
      mpfr_add(out.hi.raw(), raw.hi.raw(), pad.raw(), MPFR_RNDU);
      return out;
    }
    p *= 2;  // cancellation: retry wider
  }
}

}  // namespace pwsnf
