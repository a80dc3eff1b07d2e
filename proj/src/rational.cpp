#include "pwsnf/rational.hpp"

#include <functional>
#include <ostream>

#include "pwsnf/errors.hpp"

namespace pwsnf {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
  if (v_.get_den() == 0) throw DivisionByZero();
  v_.canonicalize();
}

static bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational Rational::parse(std::string_view s) {
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view n = body.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(n) || !all_digits(d)) throw InputError("not a rational literal: '" + std::string(s) + "'");
  mpz_class zn{std::string(n)}, zd{std::string(d)};
  if (neg) zn = -zn;
  return Rational(zn, zd);
}

long Rational::to_long() const {
  if (!is_integer() || !v_.get_num().fits_slong_p()) throw NotExact("not a machine integer: " + str());
  return v_.get_num().get_si();
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  Rational r;
  r.v_ = 1 / v_;
  r.v_.canonicalize();
  return r;
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Rational r;
  mpz_pow_ui(r.v_.get_num_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.v_.get_den_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  v_ /= o.v_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(v_.get_num().get_str(16));
  return h * 1000003u ^ std::hash<std::string>{}(v_.get_den().get_str(16));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f, 1);
}

Rational double_factorial(long n) {
  if (n <= 0) return 1;
  mpz_class f;
  mpz_2fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f, 1);
}

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b, 1);
}

}  // namespace pwsnf
