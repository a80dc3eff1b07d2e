#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwsnf/rational.hpp"

namespace pwsnf {

inline constexpr std::size_t kMaxSymbols = 24;

// Parameters first, then (optionally) the variables x, y.
class SymbolTable {
 public:
  explicit SymbolTable(std::vector<std::string> params, bool with_xy = true);

  std::size_t size() const { return names_.size(); }
  std::size_t num_params() const { return nparams_; }
  bool has_xy() const { return names_.size() > nparams_; }
  std::size_t x() const { return nparams_; }
  std::size_t y() const { return nparams_ + 1; }
  bool is_parameter(std::size_t i) const { return i < nparams_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<std::string> params() const { return {names_.begin(), names_.begin() + nparams_}; }
  std::optional<std::size_t> find(std::string_view n) const;
  std::size_t index(std::string_view n) const;  // InputError if undeclared

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.nparams_ == b.nparams_ && a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::size_t nparams_;
};

using Ring = std::shared_ptr<const SymbolTable>;
Ring make_ring(std::vector<std::string> params, bool with_xy = true);

struct Monomial {
  std::array<std::uint16_t, kMaxSymbols> e{};
  std::uint32_t deg = 0;

  static Monomial var(std::size_t idx, unsigned power = 1);
  bool is_one() const { return deg == 0; }
  bool divides(const Monomial& o) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);  // requires b | a
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.e == b.e; }
  std::size_t hash() const;
};

// Graded reverse lexicographic comparison: negative if a < b, positive if a > b.
int grevlex_cmp(const Monomial& a, const Monomial& b);
inline bool grevlex_greater(const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; }
bool coprime(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  Rational c;
};

struct QuasiGrading {
  int p = 1;
  int q = 2;
  QuasiGrading() = default;
  explicit QuasiGrading(int ell);  // (1, 2*ell)
  int weight(int i, int j) const { return i * p + j * q; }
};

// Exact polynomial over Q. A ring-less Poly is a scalar constant that adopts
// the ring of whatever it is combined with.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(Ring r, const Rational& c);

  static Poly var(const Ring& r, std::size_t idx, unsigned power = 1);
  static Poly var(const Ring& r, std::string_view name);
  static Poly monomial(const Ring& r, const Monomial& m, const Rational& c);
  static Poly from_terms(Ring r, std::vector<Term> terms);  // sorts and merges

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Rational constant_value() const;  // requires is_constant()
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().m.deg); }
  int degree_in(std::size_t idx) const;
  bool involves(std::size_t idx) const { return degree_in(idx) > 0; }
  bool involves_xy() const;
  Poly with_ring(const Ring& r) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly pow(unsigned e) const;

  Poly mul_term(const Monomial& m, const Rational& c) const;
  // this + c*m*g in one merge pass.
  Poly add_scaled(const Poly& g, const Rational& c, const Monomial& m) const;
  Poly monic() const;

  Poly derivative(std::size_t idx, unsigned order = 1) const;
  Poly derivative(std::string_view name, unsigned order = 1) const;
  Poly substitute(const std::map<std::size_t, Poly>& values) const;
  Poly substitute(std::size_t idx, const Poly& value) const { return substitute({{idx, value}}); }
  Poly evaluate(const std::map<std::size_t, Rational>& values) const;
  // Rewrite into another ring: symbols in `values` are replaced by those polynomials
  // (given in `target`), all others are matched by name.
  Poly transfer(const Ring& target, const std::map<std::size_t, Poly>& values = {}) const;

  Poly quasi_component(const QuasiGrading& g, int k) const;
  // Coefficients of x^i y^j as polynomials in the parameters (same ring).
  std::map<std::pair<int, int>, Poly> xy_coefficients() const;
  Poly xy_coefficient(int i, int j) const;
  static Poly from_xy(const Ring& r, const std::map<std::pair<int, int>, Poly>& coeffs);

  std::string str() const;
  std::size_t hash() const;
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  friend class PolyBuilder;
  Ring ring_;
  std::vector<Term> terms_;  // strictly decreasing in grevlex, no zero coefficients
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

// Ring shared by a and b; throws InputError on mismatched symbol tables.
Ring common_ring(const Ring& a, const Ring& b);

}  // namespace pwsnf
