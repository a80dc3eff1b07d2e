#include "pwsnf/trigexp.hpp"

#include "pwsnf/errors.hpp"

namespace pwsnf {
namespace {

struct Complex {
  Rational re, im;
};

Complex cmul(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Complex cinv(const Complex& z) {
  Rational n = z.re * z.re + z.im * z.im;
  return {z.re / n, -z.im / n};
}

}  // namespace

TrigExpPoly::TrigExpPoly(const Poly& c) { add(c, 0, 0, 0, TrigKind::Cos); }

TrigExpPoly TrigExpPoly::term(const Poly& c, int p, const Rational& a, const Rational& b, TrigKind kind) {
  TrigExpPoly t;
  t.add(c, p, a, b, kind);
  return t;
}

void TrigExpPoly::add(const Poly& c0, int p, Rational a, Rational b, TrigKind kind) {
  if (c0.is_zero()) return;
  Poly c = c0;
  if (b.sign() < 0) {
    b = -b;
    if (kind == TrigKind::Sin) c = -c;
  }
  if (b.is_zero() && kind == TrigKind::Sin) return;
  TrigKey k{p, std::move(a), std::move(b), kind};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), std::move(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

TrigExpPoly& TrigExpPoly::operator+=(const TrigExpPoly& o) {
  for (const auto& [k, c] : o.terms_) add(c, k.p, k.a, k.b, k.kind);
  return *this;
}

TrigExpPoly& TrigExpPoly::operator-=(const TrigExpPoly& o) {
  for (const auto& [k, c] : o.terms_) add(-c, k.p, k.a, k.b, k.kind);
  return *this;
}

TrigExpPoly operator*(const TrigExpPoly& f, const TrigExpPoly& g) {
  TrigExpPoly r;
  const Rational half(1, 2);
  for (const auto& [kf, cf] : f.terms_) {
    for (const auto& [kg, cg] : g.terms_) {
      Poly c = (cf * cg).scaled(half);
      int p = kf.p + kg.p;
      Rational a = kf.a + kg.a;
      Rational sum = kf.b + kg.b, diff = kf.b - kg.b;
      bool sf = kf.kind == TrigKind::Sin, sg = kg.kind == TrigKind::Sin;
      if (!sf && !sg) {
        r.add(c, p, a, diff, TrigKind::Cos);
        r.add(c, p, a, sum, TrigKind::Cos);
      } else if (sf && sg) {
        r.add(c, p, a, diff, TrigKind::Cos);
        r.add(-c, p, a, sum, TrigKind::Cos);
      } else if (sf) {  // sin(bf) cos(bg)
        r.add(c, p, a, sum, TrigKind::Sin);
        r.add(c, p, a, diff, TrigKind::Sin);
      } else {  // cos(bf) sin(bg)
        r.add(c, p, a, sum, TrigKind::Sin);
        r.add(-c, p, a, diff, TrigKind::Sin);
      }
    }
  }
  return r;
}

TrigExpPoly TrigExpPoly::scaled(const Poly& c) const {
  TrigExpPoly r;
  for (const auto& [k, v] : terms_) r.add(v * c, k.p, k.a, k.b, k.kind);
  return r;
}

TrigExpPoly TrigExpPoly::pow(unsigned e) const {
  TrigExpPoly r(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

TrigExpPoly TrigExpPoly::derivative() const {
  TrigExpPoly r;
  for (const auto& [k, c] : terms_) {
    if (k.p > 0) r.add(c.scaled(k.p), k.p - 1, k.a, k.b, k.kind);
    r.add(c.scaled(k.a), k.p, k.a, k.b, k.kind);
    if (k.kind == TrigKind::Cos) r.add(c.scaled(-k.b), k.p, k.a, k.b, TrigKind::Sin);
    else r.add(c.scaled(k.b), k.p, k.a, k.b, TrigKind::Cos);
  }
  return r;
}

TrigExpPoly TrigExpPoly::antiderivative() const {
  TrigExpPoly r;
  for (const auto& [k, c] : terms_) {
    if (k.a.is_zero() && k.b.is_zero()) {
      r.add(c.scaled(Rational(1, k.p + 1)), k.p + 1, 0, 0, TrigKind::Cos);
      continue;
    }
    // Integrate Re/Im of tau^p e^{z tau}, z = a + i b:
    //   e^{z tau} * sum_j (-1)^j p!/(p-j)! tau^{p-j} / z^{j+1}
    Complex zinv = cinv({k.a, k.b});
    Complex w = zinv;  // 1/z^{j+1}
    Rational fall = 1;  // p!/(p-j)!
    for (int j = 0; j <= k.p; ++j) {
      Rational s = (j % 2 ? -fall : fall);
      Rational u = w.re * s, v = w.im * s;
      int q = k.p - j;
      if (k.kind == TrigKind::Cos) {
        r.add(c.scaled(u), q, k.a, k.b, TrigKind::Cos);
        r.add(c.scaled(-v), q, k.a, k.b, TrigKind::Sin);
      } else {
        r.add(c.scaled(u), q, k.a, k.b, TrigKind::Sin);
        r.add(c.scaled(v), q, k.a, k.b, TrigKind::Cos);
      }
      fall *= Rational(k.p - j);
      w = cmul(w, zinv);
    }
  }
  Poly at0 = r.value_at_zero();
  r.add(-at0, 0, 0, 0, TrigKind::Cos);
  return r;
}

Poly TrigExpPoly::value_at_zero() const {
  Poly v;
  for (const auto& [k, c] : terms_)
    if (k.p == 0 && k.kind == TrigKind::Cos) v += c;
  return v;
}

std::string TrigExpPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    std::string t = "(" + c.str() + ")";
    if (k.p) t += "*t^" + std::to_string(k.p);
    if (!k.a.is_zero()) t += "*exp(" + k.a.str() + "*t)";
    if (!k.b.is_zero()) t += std::string(k.kind == TrigKind::Cos ? "*cos(" : "*sin(") + k.b.str() + "*t)";
    out += out.empty() ? t : " + " + t;
  }
  return out;
}

ExtSum<Poly> te_eval_at_pi(const TrigExpPoly& f, const Rational& gamma1) {
  ExtSum<Poly> r(gamma1);
  for (const auto& [k, c] : f.terms()) {
    if (!k.b.is_integer()) throw NotExact("frequency " + k.b.str() + " is not an integer; cannot evaluate at pi exactly");
    int m = 0;
    if (!k.a.is_zero()) {
      if (gamma1.is_zero()) throw NotExact("exponential rate " + k.a.str() + " with gamma1 = 0");
      Rational q = k.a / gamma1;
      if (!q.is_integer()) throw NotExact("rate " + k.a.str() + " is not an integer multiple of gamma1");
      m = static_cast<int>(q.to_long());
    }
    if (k.kind == TrigKind::Sin) continue;  // sin(b pi) = 0
    bool odd = k.b.to_long() % 2 != 0;
    r.add_term(odd ? -c : c, k.p, m);
  }
  return r;
}

}  // namespace pwsnf
