#pragma once

#include <map>
#include <string>
#include <tuple>

#include "pwsnf/extscalar.hpp"
#include "pwsnf/poly.hpp"
#include "pwsnf/rational.hpp"

namespace pwsnf {

enum class TrigKind { Cos = 0, Sin = 1 };

// tau^p * exp(a*tau) * {cos,sin}(b*tau), canonical with b >= 0 and no sin at b = 0.
struct TrigKey {
  int p = 0;
  Rational a, b;
  TrigKind kind = TrigKind::Cos;
  friend bool operator<(const TrigKey& x, const TrigKey& y) {
    return std::tie(x.p, x.a, x.b, x.kind) < std::tie(y.p, y.a, y.b, y.kind);
  }
  friend bool operator==(const TrigKey& x, const TrigKey& y) {
    return x.p == y.p && x.a == y.a && x.b == y.b && x.kind == y.kind;
  }
};

class TrigExpPoly {
 public:
  TrigExpPoly() = default;
  TrigExpPoly(const Poly& c);  // NOLINT(google-explicit-constructor): constant function
  TrigExpPoly(long c) : TrigExpPoly(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  static TrigExpPoly term(const Poly& c, int p, const Rational& a, const Rational& b, TrigKind kind);
  static TrigExpPoly sin(const Rational& b) { return term(1, 0, 0, b, TrigKind::Sin); }
  static TrigExpPoly cos(const Rational& b) { return term(1, 0, 0, b, TrigKind::Cos); }
  static TrigExpPoly exp(const Rational& a) { return term(1, 0, a, 0, TrigKind::Cos); }
  static TrigExpPoly tau(int p = 1) { return term(1, p, 0, 0, TrigKind::Cos); }

  const std::map<TrigKey, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TrigExpPoly& operator+=(const TrigExpPoly& o);
  TrigExpPoly& operator-=(const TrigExpPoly& o);
  friend TrigExpPoly operator+(TrigExpPoly a, const TrigExpPoly& b) { return a += b; }
  friend TrigExpPoly operator-(TrigExpPoly a, const TrigExpPoly& b) { return a -= b; }
  friend TrigExpPoly operator*(const TrigExpPoly& f, const TrigExpPoly& g);
  TrigExpPoly scaled(const Poly& c) const;
  TrigExpPoly pow(unsigned e) const;

  TrigExpPoly derivative() const;
  // F with F' = f and F(0) = 0.
  TrigExpPoly antiderivative() const;
  Poly value_at_zero() const;

  std::string str() const;
  friend bool operator==(const TrigExpPoly& a, const TrigExpPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add(const Poly& c, int p, Rational a, Rational b, TrigKind kind);
  std::map<TrigKey, Poly> terms_;
};

// Value at tau = pi. Requires integer frequencies and rates that are integer multiples of gamma1.
ExtSum<Poly> te_eval_at_pi(const TrigExpPoly& f, const Rational& gamma1);

}  // namespace pwsnf
