#pragma once

#include <map>
#include <string>
#include <utility>

#include "pwsnf/errors.hpp"
#include "pwsnf/rational.hpp"
#include "pwsnf/real.hpp"

namespace pwsnf {

// Finite sum of c * pi^e * E^m where E = exp(gamma1 * pi). C is Rational or Poly.
// When gamma1 = 0, E = 1 and every m is folded to 0.
template <class C>
class ExtSum {
 public:
  using Key = std::pair<int, int>;  // (e, m)

  ExtSum() = default;
  explicit ExtSum(Rational gamma1) : gamma1_(std::move(gamma1)) {}
  ExtSum(Rational gamma1, C coeff, int e = 0, int m = 0) : gamma1_(std::move(gamma1)) {
    add_term(std::move(coeff), e, m);
  }

  const Rational& gamma1() const { return gamma1_; }
  const std::map<Key, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(C coeff, int e, int m) {
    if (gamma1_.is_zero()) m = 0;
    auto it = terms_.find({e, m});
    if (it == terms_.end()) {
      if (!coeff.is_zero()) terms_.emplace(Key{e, m}, std::move(coeff));
      return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  ExtSum& operator+=(const ExtSum& o) {
    adopt(o);
    for (const auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
    return *this;
  }
  ExtSum& operator-=(const ExtSum& o) {
    adopt(o);
    for (const auto& [k, c] : o.terms_) add_term(C(0) - c, k.first, k.second);
    return *this;
  }
  friend ExtSum operator+(ExtSum a, const ExtSum& b) { return a += b; }
  friend ExtSum operator-(ExtSum a, const ExtSum& b) { return a -= b; }
  friend ExtSum operator*(const ExtSum& a, const ExtSum& b) {
    ExtSum r(a.gamma1_);
    r.adopt(b);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ca * cb, ka.first + kb.first, ka.second + kb.second);
    return r;
  }
  friend ExtSum operator*(const ExtSum& a, const C& s) {
    ExtSum r(a.gamma1_);
    for (const auto& [k, c] : a.terms_) r.add_term(c * s, k.first, k.second);
    return r;
  }
  friend bool operator==(const ExtSum& a, const ExtSum& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.gamma1_ == b.gamma1_ && a.terms_ == b.terms_;
  }

  // Apply f to every coefficient (e.g. reduction modulo an ideal).
  template <class F>
  ExtSum map_coefficients(F&& f) const {
    ExtSum r(gamma1_);
    for (const auto& [k, c] : terms_) r.add_term(f(c), k.first, k.second);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest powers first for readability.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      std::string factors;
      if (k.first == 1) factors = "pi";
      else if (k.first != 0) factors = "pi^" + paren_if_negative(k.first);
      if (k.second != 0) {
        if (!factors.empty()) factors += "*";
        factors += k.second == 1 ? std::string("E") : "E^" + paren_if_negative(k.second);
      }
      std::string cs = c.str();
      bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      std::string term;
      if (factors.empty()) term = compound ? "(" + cs + ")" : cs;
      else if (cs == "1") term = factors;
      else if (cs == "-1") term = "-" + factors;
      else term = (compound ? "(" + cs + ")" : cs) + "*" + factors;
      if (out.empty()) out = term;
      else if (term[0] == '-') out += " - " + term.substr(1);
      else out += " + " + term;
    }
    return out;
  }

 private:
  static std::string paren_if_negative(int v) {
    return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
  }
  void adopt(const ExtSum& o) {
    if (o.is_zero()) return;
    if (is_zero()) {
      gamma1_ = o.gamma1_;
      return;
    }
    if (gamma1_ != o.gamma1_) throw Error("ExtScalar operands carry different gamma1");
  }

  Rational gamma1_;
  std::map<Key, C> terms_;
};

using ExtScalar = ExtSum<Rational>;

struct Enclosure {
  Real lo, hi;
  bool contains(const Enclosure& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  bool contains(const Real& v) const { return lo <= v && v <= hi; }
  Real width() const { return hi - lo; }
  double mid() const { return ((lo + hi) * 0.5).to_double(); }
  // Certified sign: +1 / -1 when the enclosure excludes zero, 0 otherwise.
  int certified_sign() const { return lo.sign() > 0 ? 1 : (hi.sign() < 0 ? -1 : 0); }
};

// Certified enclosure of the real value of s, width <= 10^(2-digits). digits >= 15.
Enclosure ext_eval(const ExtScalar& s, int digits);

}  // namespace pwsnf
