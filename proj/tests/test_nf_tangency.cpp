#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pwsnf/errors.hpp"
#include "pwsnf/nf_tangency.hpp"
#include "pwsnf/parser.hpp"

using namespace pwsnf;

namespace {

Field field(const Ring& r, const std::string& X, const std::string& Y) { return {parse_poly(X, r), parse_poly(Y, r)}; }

Poly compose_trunc(const Poly& h, const Poly& Px, const Poly& Py, Weights w, int cap) {
  XYSeries sx = xy_from_poly(Px), sy = xy_from_poly(Py), out;
  std::vector<XYSeries> px{{{{0, 0}, Poly(1)}}}, py{{{{0, 0}, Poly(1)}}};
  for (const auto& [k, c] : xy_from_poly(h)) {
    if (w.of(k.first, k.second) > cap) continue;
    while (static_cast<int>(px.size()) <= k.first) px.push_back(xy_mul(px.back(), sx, w, cap));
    while (static_cast<int>(py.size()) <= k.second) py.push_back(xy_mul(py.back(), sy, w, cap));
    xy_add_into(out, xy_mul(px[k.first], py[k.second], w, cap), c);
  }
  return xy_to_poly(out, Px.ring());
}

Poly trunc(const Poly& p, Weights w, int cap) { return xy_to_poly(xy_truncate(xy_from_poly(p), w, cap), p.ring()); }

// With Phi = S o (id + g^1) o ... o (id + g^N) and G the normal form, D Phi G == F o Phi
// through weight N (first component) and N + 2l - 1 (second).
void check_conjugacy(const Ring& r, const Field& F, const TangencyNF& nf) {
  const int L = 2 * nf.ell, N = nf.N;
  const Weights w{1, L};
  const int cx = N + 1, cy = N + L;
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y());
  Poly Px = x, Py = y;
  for (int m = N - 1; m >= 0; --m) {
    const auto& st = nf.steps[m];
    Poly g1(r, 0), g2(r, 0);
    for (std::size_t i = 0; i < st.alpha.size(); ++i)
      g1 += st.alpha[i] * Poly::var(r, r->x(), m + 2 - L * i) * Poly::var(r, r->y(), i);
    for (std::size_t i = 1; i < st.beta.size(); ++i)
      g2 += st.beta[i] * Poly::var(r, r->x(), m + 1 + L - L * i) * Poly::var(r, r->y(), i);
    Poly nx = compose_trunc(x + g1, Px, Py, w, cx), ny = compose_trunc(y + g2, Px, Py, w, cy);
    Px = nx;
    Py = ny;
  }
  Py = Py.scaled(nf.q1);
  Poly Gx(r, nf.a0), Gy = Poly::var(r, r->x(), L - 1).scaled(-nf.a0);
  for (int k = 1; k <= N; ++k) {
    Poly cx_ = nf.coupled ? nf.nu[k + 1] : nf.mu[k + 1];
    Poly cy_ = nf.coupled ? nf.eta[k + 1] : nf.mu[k + 1];
    Gx -= cx_ * Poly::var(r, r->x(), k);
    Gy += cy_ * Poly::var(r, r->x(), k + L - 1);
  }
  Poly lx = Px.derivative(r->x()) * Gx + Px.derivative(r->y()) * Gy;
  Poly ly = Py.derivative(r->x()) * Gx + Py.derivative(r->y()) * Gy;
  CHECK(trunc(lx - compose_trunc(F.X, Px, Py, w, N), w, N).is_zero());
  CHECK(trunc(ly - compose_trunc(F.Y, Px, Py, w, N + L - 1), w, N + L - 1).is_zero());
}

// -Y/X of the coupled normal form divided by x^{2l-1}, by plain series division.
std::vector<Poly> sigma_by_division(const TangencyNF& nf) {
  const int N = nf.N;
  std::vector<Poly> num(N + 1), den(N + 1), out(N + 2, Poly(0));
  num[0] = Poly(-nf.a0);
  den[0] = Poly(-nf.a0);
  for (int k = 1; k <= N; ++k) {
    num[k] = nf.eta[k + 1];
    den[k] = nf.nu[k + 1];
  }
  std::vector<Poly> quo(N + 1);
  for (int k = 0; k <= N; ++k) {
    Poly acc = num[k];
    for (int i = 1; i <= k; ++i) acc -= den[i] * quo[k - i];
    quo[k] = acc.scaled(Rational(1) / -nf.a0);
  }
  CHECK(quo[0] == Poly(1));
  for (int k = 1; k <= N; ++k) out[k + 1] = quo[k];
  return out;
}

}  // namespace

TEST_CASE("prescale and rejections") {
  Ring r = make_ring({});
  int ell;
  Rational a0, q1;
  auto v = tangency_prescale(field(r, "-1 + x", "3*x^3 + y"), 4, &ell, &a0, &q1);
  CHECK(ell == 2);
  CHECK(a0 == Rational(-1));
  CHECK(q1 == Rational(3));
  CHECK(xy_coeff(v.Y, 3, 0) == Poly(1));
  CHECK_THROWS_AS(tangency_normal_form(field(r, "-1", "-x"), 3), InputError);
  CHECK_THROWS_AS(tangency_normal_form(field(r, "-1", "x^2"), 3), InputError);
  CHECK_THROWS_AS(tangency_normal_form(field(r, "-y", "x"), 3), InputError);
}

TEST_CASE("straight fold is already normal") {
  Ring r = make_ring({});
  for (int ell = 1; ell <= 3; ++ell) {
    auto nf = tangency_normal_form(field(r, "-2", "2*x^" + std::to_string(2 * ell - 1)), 5);
    for (int k = 2; k <= 6; ++k) {
      CHECK(nf.mu[k].is_zero());
      CHECK(nf.r0[k].is_zero());
    }
  }
}

TEST_CASE("symbolic fold: conjugacy, time scaling, lower flip") {
  Ring r = make_ring({"a", "b", "c"});
  for (int ell = 1; ell <= 3; ++ell) {
    std::string e = std::to_string(2 * ell - 1);
    Field F = field(r, "-1 + a*x + b*y + c*x^2", "x^" + e + " + a*x^" + e + "*x + b*y + c*x*y + y^2");
    auto nf = tangency_normal_form(F, 5);
    CHECK(nf.ell == ell);
    check_conjugacy(r, F, nf);
    for (const auto& c : recompose_tangency_scaling(nf.a0, nf.mu, nf.T, nf.N)) CHECK(c.is_zero());
    CHECK(nf.mu[2] != Poly(0));
  }
  Field lower = field(r, "1 + a*x + b*y", "x + c*y + a*x^2");
  auto lo = lower_tangency_normal_form(lower, 4);
  auto direct = tangency_normal_form(reflect_reverse(lower), 4);
  for (int k = 2; k <= 5; ++k) CHECK(lo.r0[k] == direct.r0[k]);
}

TEST_CASE("numeric folds with non-unit a0 and q1") {
  Ring r = make_ring({});
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 8; ++trial) {
    auto rc = [&] { return std::to_string(c(rng)); };
    int ell = 1 + trial % 2;
    std::string e = std::to_string(2 * ell - 1);
    Field F = field(r, "-3 + " + rc() + "*x + " + rc() + "*y + " + rc() + "*x^2*y",
                    "2*x^" + e + " + " + rc() + "*y + " + rc() + "*x*y + " + rc() + "*x^4 + " + rc() + "/5*y^2");
    auto nf = tangency_normal_form(F, 5);
    CHECK(nf.q1 == Rational(2, 3));
    check_conjugacy(r, F, nf);
    for (const auto& cc : recompose_tangency_scaling(nf.a0, nf.mu, nf.T, nf.N)) CHECK(cc.is_zero());
  }
}

TEST_CASE("coupled reduction: pinned boundary coefficients and sigma") {
  Ring r = make_ring({"a", "b"});
  Field F = field(r, "-1 + a*x + b*x*y", "x + b*x^2 + a*y + x*y");
  auto free_nf = tangency_normal_form(F, 4);
  auto same = tangency_normal_form_coupled(F, 4, free_nf.r0);
  for (int k = 2; k <= 5; ++k) {
    CHECK(same.nu[k] == free_nf.mu[k]);
    CHECK(same.eta[k] == free_nf.mu[k]);
    CHECK(same.sigma[k].is_zero());
  }
  std::vector<Poly> pin(6, Poly(0));
  pin[2] = Poly::var(r, "a");
  pin[3] = Poly(Rational(1, 2));
  pin[4] = Poly::var(r, "b").pow(2);
  auto nf = tangency_normal_form_coupled(F, 4, pin);
  check_conjugacy(r, F, nf);
  for (int k = 2; k <= 5; ++k) CHECK(nf.boundary.r[k] == pin[k]);
  auto div = sigma_by_division(nf);
  for (int k = 2; k <= 5; ++k) CHECK(nf.sigma[k] == div[k]);
  CHECK(nf.sigma[2] == (nf.nu[2] - nf.eta[2]).scaled(Rational(1) / nf.a0));

  Ring r0 = make_ring({});
  Field G = field(r0, "2 + x", "-4*x^3 + y + x^2*y");
  std::vector<Poly> pin2{Poly(0), Poly(0), Poly(1), Poly(-1), Poly(2), Poly(0)};
  auto ng = tangency_normal_form_coupled(G, 5, pin2);
  check_conjugacy(r0, G, ng);
  auto div2 = sigma_by_division(ng);
  for (int k = 2; k <= 6; ++k) CHECK(ng.sigma[k] == div2[k]);
}
