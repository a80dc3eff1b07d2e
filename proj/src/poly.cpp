#include "pwsnf/poly.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "pwsnf/errors.hpp"

namespace pwsnf {

SymbolTable::SymbolTable(std::vector<std::string> params, bool with_xy)
    : names_(std::move(params)), nparams_(names_.size()) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n == "x" || n == "y") throw InputError("'" + n + "' is reserved for the state variables");
    if (!seen.insert(n).second) throw InputError("duplicate parameter '" + n + "'");
  }
  if (with_xy) {
    names_.push_back("x");
    names_.push_back("y");
  }
  if (names_.size() > kMaxSymbols)
    throw InputError("too many symbols (" + std::to_string(names_.size()) + " > " +
                     std::to_string(kMaxSymbols) + ")");
}

std::optional<std::size_t> SymbolTable::find(std::string_view n) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

std::size_t SymbolTable::index(std::string_view n) const {
  auto i = find(n);
  if (!i) throw InputError("undeclared symbol '" + std::string(n) + "'");
  return *i;
}

Ring make_ring(std::vector<std::string> params, bool with_xy) {
  return std::make_shared<const SymbolTable>(std::move(params), with_xy);
}

Ring common_ring(const Ring& a, const Ring& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (!(*a == *b)) throw InputError("mismatched symbol tables");
  return a;
}

// ---- Monomial ----

Monomial Monomial::var(std::size_t idx, unsigned power) {
  Monomial m;
  m.e[idx] = static_cast<std::uint16_t>(power);
  m.deg = power;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xFFFFu) throw ResourceError("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
  r.deg = a.deg - b.deg;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : e) h = (h ^ v) * 1099511628211ull;
  return h;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (std::size_t i = kMaxSymbols; i-- > 0;)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  return 0;
}

QuasiGrading::QuasiGrading(int ell) : p(1), q(2 * ell) {
  if (ell < 1) throw InputError("quasi-grading needs ell >= 1");
}

// ---- Poly ----

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly::Poly(Ring r, const Rational& c) : Poly(c) { ring_ = std::move(r); }

Poly Poly::var(const Ring& r, std::size_t idx, unsigned power) {
  if (!r || idx >= r->size()) throw InputError("symbol index out of range");
  return monomial(r, Monomial::var(idx, power), 1);
}

Poly Poly::var(const Ring& r, std::string_view name) { return var(r, r->index(name)); }

Poly Poly::monomial(const Ring& r, const Monomial& m, const Rational& c) {
  Poly p;
  p.ring_ = r;
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

static void canonicalize(std::vector<Term>& t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return grevlex_greater(a.m, b.m); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i + 1;
    Rational c = std::move(t[i].c);
    while (j < t.size() && t[j].m == t[i].m) c += t[j++].c;
    if (!c.is_zero()) {
      t[out].m = t[i].m;
      t[out].c = std::move(c);
      ++out;
    }
    i = j;
  }
  t.resize(out);
}

Poly Poly::from_terms(Ring r, std::vector<Term> terms) {
  Poly p;
  p.ring_ = std::move(r);
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant: " + str());
  return terms_.empty() ? Rational(0) : terms_[0].c;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return 0;
}

int Poly::degree_in(std::size_t idx) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[idx]);
  return d;
}

bool Poly::involves_xy() const {
  if (!ring_ || !ring_->has_xy()) return false;
  return involves(ring_->x()) || involves(ring_->y());
}

Poly Poly::with_ring(const Ring& r) const {
  Poly p = *this;
  common_ring(r, ring_);
  p.ring_ = r;
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

// Merge two sorted term lists: a + s*b.
static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, const Rational& s,
                               const Monomial* shift) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto bterm = [&](std::size_t k) {
    Term t{shift ? b[k].m * *shift : b[k].m, b[k].c * s};
    return t;
  };
  Term bj;
  bool have_b = false;
  while (i < a.size() || j < b.size()) {
    if (!have_b && j < b.size()) {
      bj = bterm(j);
      have_b = true;
    }
    if (!have_b) {
      out.push_back(a[i++]);
      continue;
    }
    if (i >= a.size()) {
      out.push_back(std::move(bj));
      have_b = false;
      ++j;
      continue;
    }
    int c = grevlex_cmp(a[i].m, bj.m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(std::move(bj));
      have_b = false;
      ++j;
    } else {
      Rational sum = a[i].c + bj.c;
      if (!sum.is_zero()) out.push_back({a[i].m, std::move(sum)});
      ++i;
      ++j;
      have_b = false;
    }
  }
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  ring_ = common_ring(ring_, o.ring_);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge(terms_, o.terms_, 1, nullptr);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  ring_ = common_ring(ring_, o.ring_);
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, -1, nullptr);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.ring_ = common_ring(a.ring_, b.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const Poly& s = a.terms_.size() <= b.terms_.size() ? a : b;
  const Poly& l = a.terms_.size() <= b.terms_.size() ? b : a;
  if (s.terms_.size() == 1) {
    r.terms_.reserve(l.terms_.size());
    for (const auto& t : l.terms_) r.terms_.push_back({t.m * s.terms_[0].m, t.c * s.terms_[0].c});
    return r;  // multiplication by a monomial preserves order
  }
  std::vector<Term> prod;
  prod.reserve(s.terms_.size() * l.terms_.size());
  for (const auto& x : s.terms_)
    for (const auto& y : l.terms_) prod.push_back({x.m * y.m, x.c * y.c});
  canonicalize(prod);
  r.terms_ = std::move(prod);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly(ring_, 0);
  Poly p = *this;
  for (auto& t : p.terms_) t.c *= c;
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(ring_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::mul_term(const Monomial& m, const Rational& c) const {
  Poly p;
  p.ring_ = ring_;
  if (c.is_zero()) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.m * m, t.c * c});
  return p;
}

Poly Poly::add_scaled(const Poly& g, const Rational& c, const Monomial& m) const {
  Poly p;
  p.ring_ = common_ring(ring_, g.ring_);
  if (c.is_zero() || g.terms_.empty()) {
    p.terms_ = terms_;
    return p;
  }
  p.terms_ = merge(terms_, g.terms_, c, &m);
  return p;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(terms_[0].c.inverse());
}

Poly Poly::derivative(std::size_t idx, unsigned order) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.m.e[idx] < order) continue;
    Rational c = t.c;
    for (unsigned k = 0; k < order; ++k) c *= Rational(long(t.m.e[idx]) - long(k));
    Term n{t.m, c};
    n.m.e[idx] = static_cast<std::uint16_t>(n.m.e[idx] - order);
    n.m.deg -= order;
    out.push_back(std::move(n));
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::derivative(std::string_view name, unsigned order) const {
  if (!ring_) return Poly();
  return derivative(ring_->index(name), order);
}

Poly Poly::substitute(const std::map<std::size_t, Poly>& values) const {
  Ring r = ring_;
  for (const auto& [idx, v] : values) r = common_ring(r, v.ring_);
  // Cache powers per substituted symbol.
  std::map<std::size_t, std::vector<Poly>> powers;
  auto power_of = [&](std::size_t idx, unsigned e) -> const Poly& {
    auto& v = powers[idx];
    if (v.empty()) v.push_back(Poly(r, 1));
    while (v.size() <= e) v.push_back(v.back() * values.at(idx));
    return v[e];
  };
  Poly result(r, 0);
  std::vector<Term> untouched;
  for (const auto& t : terms_) {
    Monomial rest = t.m;
    Poly factor(r, t.c);
    bool hit = false;
    for (const auto& [idx, v] : values) {
      unsigned e = t.m.e[idx];
      if (!e) continue;
      hit = true;
      rest.e[idx] = 0;
      rest.deg -= e;
      factor = factor * power_of(idx, e);
    }
    if (!hit) {
      untouched.push_back(t);
      continue;
    }
    result += factor.mul_term(rest, 1);
  }
  result += from_terms(r, std::move(untouched));
  return result;
}

Poly Poly::transfer(const Ring& target, const std::map<std::size_t, Poly>& values) const {
  if (!ring_) return Poly(target, constant_value());
  std::vector<Poly> image(ring_->size());
  std::vector<bool> needed(ring_->size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (t.m.e[i]) needed[i] = true;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    if (!needed[i]) continue;
    auto it = values.find(i);
    image[i] = it != values.end() ? it->second.with_ring(target) : var(target, ring_->name(i));
  }
  Poly out(target, 0);
  for (const auto& t : terms_) {
    Poly f(target, t.c);
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (t.m.e[i]) f = f * image[i].pow(t.m.e[i]);
    out += f;
  }
  return out;
}

Poly Poly::evaluate(const std::map<std::size_t, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n{t.m, t.c};
    for (const auto& [idx, v] : values) {
      unsigned e = n.m.e[idx];
      if (!e) continue;
      n.c *= v.pow(e);
      n.m.e[idx] = 0;
      n.m.deg -= e;
    }
    out.push_back(std::move(n));
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::quasi_component(const QuasiGrading& g, int k) const {
  if (!ring_ || !ring_->has_xy()) return k == 0 ? *this : Poly(ring_, 0);
  Poly p;
  p.ring_ = ring_;
  for (const auto& t : terms_)
    if (g.weight(t.m.e[ring_->x()], t.m.e[ring_->y()]) == k) p.terms_.push_back(t);
  return p;
}

std::map<std::pair<int, int>, Poly> Poly::xy_coefficients() const {
  std::map<std::pair<int, int>, std::vector<Term>> buckets;
  std::size_t xi = ring_ && ring_->has_xy() ? ring_->x() : kMaxSymbols;
  for (const auto& t : terms_) {
    int i = 0, j = 0;
    Term n = t;
    if (xi < kMaxSymbols) {
      i = t.m.e[xi];
      j = t.m.e[xi + 1];
      n.m.e[xi] = n.m.e[xi + 1] = 0;
      n.m.deg -= static_cast<std::uint32_t>(i + j);
    }
    buckets[{i, j}].push_back(std::move(n));
  }
  std::map<std::pair<int, int>, Poly> out;
  for (auto& [k, v] : buckets) out.emplace(k, from_terms(ring_, std::move(v)));
  return out;
}

Poly Poly::xy_coefficient(int i, int j) const {
  std::vector<Term> out;
  std::size_t xi = ring_->x();
  for (const auto& t : terms_) {
    if (t.m.e[xi] != i || t.m.e[xi + 1] != j) continue;
    Term n = t;
    n.m.e[xi] = n.m.e[xi + 1] = 0;
    n.m.deg -= static_cast<std::uint32_t>(i + j);
    out.push_back(std::move(n));
  }
  Poly p;
  p.ring_ = ring_;
  p.terms_ = std::move(out);  // removing x,y exponents keeps grevlex order within a bucket
  std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return grevlex_greater(a.m, b.m); });
  return p;
}

Poly Poly::from_xy(const Ring& r, const std::map<std::pair<int, int>, Poly>& coeffs) {
  std::vector<Term> out;
  for (const auto& [k, c] : coeffs) {
    Monomial shift;
    shift.e[r->x()] = static_cast<std::uint16_t>(k.first);
    shift.e[r->y()] = static_cast<std::uint16_t>(k.second);
    shift.deg = static_cast<std::uint32_t>(k.first + k.second);
    for (const auto& t : c.terms_) out.push_back({t.m * shift, t.c});
  }
  return from_terms(r, std::move(out));
}

static std::string render_monomial(const Monomial& m, const Ring& r) {
  std::string s;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (!m.e[i]) continue;
    if (!s.empty()) s += "*";
    s += r ? r->name(i) : "v" + std::to_string(i);
    if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
  }
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::string mono = render_monomial(t.m, ring_);
    Rational a = t.c.abs();
    std::string body;
    if (mono.empty()) body = a.str();
    else if (a.is_one()) body = mono;
    else body = a.str() + "*" + mono;
    if (out.empty()) out = (t.c.sign() < 0 ? "-" : "") + body;
    else out += (t.c.sign() < 0 ? " - " : " + ") + body;
  }
  return out;
}

std::size_t Poly::hash() const {
  std::size_t h = 0;
  for (const auto& t : terms_) h = h * 31 + t.m.hash() * 7 + t.c.hash();
  return h;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty()) common_ring(a.ring_, b.ring_);
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace pwsnf
