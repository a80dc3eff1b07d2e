#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pwsnf/errors.hpp"
#include "pwsnf/lyapunov.hpp"
#include "pwsnf/parser.hpp"

using namespace pwsnf;

namespace {

const std::string kData = PWSNF_DATA_DIR;

Poly P(const Ring& r, const std::string& s) { return parse_poly(s, r); }

// V_k printed as poly * pi^e must equal L_k * C_k modulo the prior constants.
bool matches_printed(const LyapunovSequence& seq, int k, const Poly& poly, int pi_power) {
  const auto& e = seq.at(k);
  ExtScalar c = e.factor.value();
  ExtSum<Poly> diff(c.gamma1(), poly, pi_power, 0);
  for (const auto& [key, q] : c.terms()) diff.add_term(-e.L.scaled(q), key.first, key.second);
  diff = diff.map_coefficients([&](const Poly& p) { return divide_remainder(p, e.prior_basis); });
  return diff.is_zero();
}

Analysis run(const std::string& file, const Substitutions& sets, int N) {
  return analyze(load_system(kData + "/" + file, sets), N);
}

bool all_agree(const CrosscheckReport& rep) {
  for (const auto& e : rep.entries)
    if (e.status != CrossStatus::Agree) return false;
  return true;
}

}  // namespace

TEST_CASE("factor constants") {
  CHECK(c_fp(2) == ExtScalar(Rational(0), Rational(2)));
  CHECK(c_fp(3) == ExtScalar(Rational(0), Rational(1, 2), 1, 0));
  CHECK(c_fp(4) == ExtScalar(Rational(0), Rational(4, 3)));
  CHECK(c_fp(5) == ExtScalar(Rational(0), Rational(3, 8), 1, 0));
  CHECK(c_fp(6) == ExtScalar(Rational(0), Rational(16, 15)));
  for (int k = 2; k <= 9; ++k) {
    CHECK(c_ff(k, 0) == c_fp(k));
    CHECK(c_hat(k, 0) == c_fp(k));
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int t = 0; t < 8; ++t) {
    Rational g(d(rng), 1 + std::abs(d(rng)));
    if (g.is_zero()) continue;
    CHECK(c_hat(2, g) == c_ff(2, g));
    // k = 4 by hand: sin^3 = (3 sin - sin 3t)/4 gives (2/3) E (1 + E^3) / ((1 + 9 g^2)(1 + g^2))
    Rational c4 = Rational(2, 3) / ((Rational(1) + g * g * Rational(9)) * (Rational(1) + g * g));
    ExtScalar want4(g);
    want4.add_term(c4, 0, 1);
    want4.add_term(c4, 0, 4);
    CHECK(c_hat(4, g) == want4);
    for (int k = 3; k <= 8; ++k) CHECK(!(c_hat(k, g) == c_ff(k, g)));
    // e^{g pi} int_0^pi sin^2 e^{2 g tau} = (E^3 - E) / (4 g (1 + g^2))
    Rational c = Rational(1) / (g * Rational(4) * (Rational(1) + g * g));
    ExtScalar want(g);
    want.add_term(c, 0, 3);
    want.add_term(-c, 0, 1);
    CHECK(c_hat(3, g) == want);
    CHECK(!(c_hat(3, g) == c_ff(3, g)));
    for (int k = 2; k <= 7; ++k) {
      CHECK(factor_enclosure({FactorKind::FF, k, g, 0}, 30).certified_sign() > 0);
      CHECK(ext_eval(c_hat(k, g), 30).certified_sign() > 0);
    }
  }
  for (int k = 2; k <= 7; ++k) {
    CHECK(factor_enclosure({FactorKind::FP, k, 0, 0}, 30).certified_sign() > 0);
    CHECK(factor_enclosure({FactorKind::PP, k, 0, 2}, 30).certified_sign() > 0);
  }
  CHECK(FactorTag{FactorKind::PP, 2, 0, 1}.value() == ExtScalar(Rational(0), Rational(2, 3)));
}

TEST_CASE("integral constant against quadrature") {
  for (Rational g : {Rational(1, 2), Rational(-1, 3), Rational(0)})
    for (int k = 2; k <= 6; ++k) {
      const int n = 20000;
      const double pi = 3.14159265358979323846, h = pi / n, gd = g.to_double();
      double sum = 0;
      for (int i = 0; i <= n; ++i) {
        double t = i * h, w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        sum += w * std::pow(std::sin(t), k - 1) * std::exp((k - 1) * gd * t);
      }
      double quad = sum * h / 3 * std::exp(gd * pi);
      CHECK(ext_eval(c_hat(k, g), 20).mid() == doctest::Approx(quad).epsilon(1e-9));
    }
}

TEST_CASE("upper half return map of the focus normal form") {
  Ring r = make_ring({"g2", "g3"}, false);
  std::vector<Poly> zero(6, Poly(0));
  auto m0 = upper_return_map_ff(zero, 4);
  CHECK(m0.u[1] == ExtSum<Poly>(Rational(0), Poly(1)));
  for (int k = 2; k <= 5; ++k) CHECK(m0.u[k].is_zero());

  std::vector<Poly> only2(6, Poly(0)), only3(6, Poly(0));
  only2[2] = Poly::var(r, "g2");
  only3[3] = Poly::var(r, "g3");
  CHECK(upper_return_map_ff(only2, 2).u[2] == ExtSum<Poly>(Rational(0), only2[2].scaled(2)));
  CHECK(upper_return_map_ff(only3, 2).u[3] == ExtSum<Poly>(Rational(0), only3[3].scaled(Rational(1, 2)), 1, 0));
  // u_1 = E for gamma1 != 0
  std::vector<Poly> g(4, Poly(0));
  g[1] = Poly(Rational(1, 3));
  CHECK(upper_return_map_ff(g, 2).u[1] == ExtSum<Poly>(Rational(1, 3), Poly(1), 0, 1));
}

TEST_CASE("tangency half return map against series reversion") {
  // G(x) = x^{2l}/(2l) + sum sigma_{k+1} x^{k+2l}/(k+2l) is a first integral along y = 0;
  // Pi(x) = -w with G(-w) = G(x). Solve for w order by order without Bell polynomials.
  const int N = 6;
  std::vector<std::string> names;
  for (int k = 2; k <= N + 1; ++k) names.push_back("s" + std::to_string(k));
  Ring r = make_ring(names, false);
  std::vector<Poly> sig(N + 2, Poly(0));
  for (int k = 2; k <= N + 1; ++k) sig[k] = Poly::var(r, "s" + std::to_string(k));
  for (int ell = 1; ell <= 3; ++ell) {
    const int L = 2 * ell, top = N + L;
    auto mul = [&](const std::vector<Poly>& a, const std::vector<Poly>& b) {
      std::vector<Poly> c(top + 1, Poly(0));
      for (int i = 0; i <= top; ++i)
        for (int j = 0; i + j <= top; ++j)
          if (!a[i].is_zero() && !b[j].is_zero()) c[i + j] += a[i] * b[j];
      return c;
    };
    std::vector<Poly> w(top + 1, Poly(0));
    w[1] = Poly(1);
    auto G_of_minus_w = [&] {
      std::vector<Poly> pw(top + 1, Poly(0)), acc(top + 1, Poly(0));
      pw[0] = Poly(1);
      for (int i = 1; i <= top; ++i) {
        pw = mul(pw, w);
        Rational c;
        if (i == L) c = Rational(1, L);
        else if (i > L) c = Rational(1, i);
        else continue;
        Poly coef = i == L ? Poly(1) : sig[i - L + 1];
        if (i % 2) c = -c;
        for (int d = 0; d <= top; ++d) acc[d] += (coef * pw[d]).scaled(c);
      }
      return acc;
    };
    for (int k = 2; k <= N + 1; ++k) {
      auto g = G_of_minus_w();
      Poly rhs = sig[k].scaled(Rational(1, k + L - 1));
      w[k] = rhs - g[k + L - 1];
    }
    auto m = upper_return_map_pp(sig, ell, N);
    for (int k = 1; k <= N + 1; ++k) CHECK(m.v[k] == w[k]);
  }
  CHECK(upper_return_map_pp(std::vector<Poly>(8, Poly(0)), 2, 6).v[3].is_zero());
  CHECK(upper_return_map_pp(sig, 1, 2).v[2] == sig[2].scaled(Rational(2, 3)));
}

TEST_CASE("example: piecewise quadratic focus-focus system") {
  auto a = run("ex51.toml", {}, 6);
  const Ring& r = a.cls.normalized.ring;
  const auto& s = a.seq;
  CHECK(s.type == BoundaryKind::FF);
  CHECK(s.at(1).reduced.is_zero());
  CHECK(matches_printed(s, 2, P(r, "2/3*(p11 + 2*q02 + q20)"), 0));
  CHECK(matches_printed(s, 3, P(r, "-1/8*(p02*q20 + 2*p20*q02 + 3*p20*q20 + q11*q02 + q11*q20)"), 1));
  CHECK(matches_printed(s, 4, P(r, "2/15*q20*(6*p02*p20 - p11^2 + 3*p20^2 + q20^2)"), 0));
  CHECK(matches_printed(s, 5, P(r, "1/64*p20*q20*(p20^2 - 2*q11*p20 - 8*q02*q20 - 8*q20^2)"), 1));
  CHECK(matches_printed(s, 6, P(r, "-8/315*q20*q02^2*(4*q20^2 + 4*q02*q20 - 3*p20^2)"), 0));
  for (const auto& e : s.entries) CHECK(e.canonical);
  auto rep = crosscheck_return_map(a);
  CHECK(all_agree(rep));
  CHECK(focus_order(s).kind == FocusOrder::Kind::ParameterDependent);
}

TEST_CASE("example: corrected fifth component is a center up to order 6") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-6, 6);
  int tried = 0;
  while (tried < 4) {
    Rational p20(d(rng), 3), q20(d(rng), 2);
    if (q20.is_zero()) continue;
    Rational q02 = (p20 * p20 * Rational(3) - q20 * q20 * Rational(4)) / (q20 * Rational(4));
    Rational p02 = p20 * (q02 - q20) / (q20 * Rational(2));
    Rational p11 = -q02 * Rational(2) - q20, q11 = -p20 * Rational(5, 2);
    auto a = run("ex51.toml",
                 {{"p20", p20.str()}, {"q20", q20.str()}, {"q02", q02.str()}, {"p02", p02.str()},
                  {"p11", p11.str()}, {"q11", q11.str()}},
                 6);
    CHECK(focus_order(a.seq).kind == FocusOrder::Kind::CenterUpToOrder);
    ++tried;
  }
  // The uncorrected condition admits p20 = q11 = 0, p11 = -p02 = q20 = -q02 = 1, which is not a center.
  auto bad = run("ex51.toml", {{"p20", "0"}, {"q11", "0"}, {"p11", "1"}, {"p02", "-1"}, {"q20", "1"}, {"q02", "-1"}}, 6);
  auto o = focus_order(bad.seq);
  CHECK(o.kind == FocusOrder::Kind::Value);
  CHECK(o.twice >= 1);
}

TEST_CASE("example: focus-parabolic system, case (I)") {
  auto a = run("ex52.toml", {{"delta", "0"}, {"a4", "0"}, {"a5", "0"}}, 3);
  const Ring& r = a.cls.normalized.ring;
  const auto& s = a.seq;
  CHECK(s.type == BoundaryKind::FP);
  CHECK(s.at(1).reduced.is_zero());
  CHECK(matches_printed(s, 2, P(r, "2/3*a2 + 4/3*b1"), 0));
  CHECK(s.at(3).reduced.is_zero());
  CHECK(matches_printed(s, 4, P(r, "1/30*a2*(9*a2^2 - 4*b3^2 - 4*b2)"), 0));
  CHECK(all_agree(crosscheck_return_map(a)));

  const std::vector<Substitutions> conds = {
      {{"delta", "0"}, {"a4", "0"}, {"a5", "0"}, {"a2", "-2*b1"}, {"b2", "9*b1^2 - b3^2"}},
      {{"delta", "0"}, {"a3", "0"}, {"a6", "0"}, {"a5", "-a2"}, {"b1", "0"}},
      {{"delta", "0"}, {"a2", "0"}, {"a5", "0"}, {"b1", "0"}},
      {{"delta", "0"}, {"a2", "0"}, {"a3", "a6"}, {"a5", "-2*b1"}, {"b2", "a6*a4 + 3*a6^2 + b1^2 - b3^2"}},
      {{"delta", "0"}, {"a3", "0"}, {"a6", "0"}, {"a5", "-a2 - 2*b1"}, {"b2", "a2^2 - 2*a2*b1 + b1^2 - b3^2"}},
      {{"delta", "0"}, {"a3", "0"}, {"a6", "0"}, {"a5", "-4*a2"}, {"b1", "3/2*a2"}, {"b2", "1/4*a2^2 - b3^2"}},
      {{"delta", "0"}, {"a3", "a6"}, {"a5", "-4*a2"}, {"b1", "3/2*a2"}, {"a4", "-4*a6"}, {"b2", "1/4*a2^2 - b3^2"}},
      {{"delta", "0"}, {"a3", "0"}, {"a5", "0"}, {"a6", "0"}, {"a2", "-2*b1"}, {"b2", "9*b1^2 - b3^2"}},
  };
  int idx = 1;
  for (const auto& c : conds) {
    CAPTURE(idx);
    auto ac = run("ex52.toml", c, 3);
    for (int k = 1; k <= 4; ++k) CHECK(ac.seq.at(k).L.is_zero());
    ++idx;
  }
}

TEST_CASE("example: parabolic-parabolic system") {
  for (int kp = 1; kp <= 3; ++kp)
    for (int km = 1; km <= 3; ++km) {
      CAPTURE(kp);
      CAPTURE(km);
      auto a = run("ex53.toml", {{"kplus", std::to_string(kp)}, {"kminus", std::to_string(km)}}, 4);
      const Ring& r = a.cls.normalized.ring;
      const auto& s = a.seq;
      CHECK(s.type == BoundaryKind::PP);
      for (int k = 1; k <= 5; k += 2) CHECK(s.at(k).L.is_zero());
      Rational ap(1 + 2 * kp), am(1 + 2 * km);
      Poly lam = Poly::var(r, "lambda");
      Poly v2 = lam.scaled(Rational(-2) / ap) + Poly(Rational(-2) / am);
      Poly v4 = Poly(Rational(4 * (kp - km) * (2 * kp + 2 * km + 3)) / (am.pow(3) * Rational(3)));
      CHECK(matches_printed(s, 2, v2, 0));
      CHECK(matches_printed(s, 4, v4, 0));
      // lambda0 = -(1+2k+)/(1+2k-) is a simple zero of V2
      Rational lam0 = -ap / am;
      CHECK(s.at(2).L.evaluate({{r->index("lambda"), lam0}}).is_zero());
      CHECK(!s.at(2).L.derivative("lambda").is_zero());
      CHECK(s.at(2).L.derivative("lambda").is_constant());
      // V2 = V4 = 0 iff k+ = k- and lambda = -1
      CHECK(s.at(4).reduced.is_zero() == (kp == km));
      CHECK(all_agree(crosscheck_return_map(a)));
    }
}

TEST_CASE("focus order") {
  auto o1 = focus_order(run("ex53.toml", {{"kplus", "1"}, {"kminus", "1"}, {"lambda", "-2"}}, 4).seq);
  CHECK(o1.kind == FocusOrder::Kind::Value);
  CHECK(o1.twice == 1);
  CHECK(o1.sign > 0);
  CHECK(o1.str() == "1/2");
  auto o2 = focus_order(run("ex53.toml", {{"kplus", "1"}, {"kminus", "1"}, {"lambda", "-1"}}, 4).seq);
  CHECK(o2.kind == FocusOrder::Kind::CenterUpToOrder);
  auto o3 = focus_order(run("ex53.toml", {{"kplus", "1"}, {"kminus", "1"}}, 4).seq);
  CHECK(o3.kind == FocusOrder::Kind::ParameterDependent);

  // gamma sequences with the first nonzero at index 3 give order 1
  std::vector<Poly> gp(6, Poly(0)), gm(6, Poly(0));
  gp[3] = Poly(2);
  gm[3] = Poly(-1);
  auto s = lyapunov_ff(gp, gm, 4);
  CHECK(focus_order(s).twice == 2);
  // invariance under positive rescaling of the L_k
  for (auto& e : s.entries) e.reduced = e.reduced.scaled(Rational(7, 3));
  CHECK(focus_order(s).twice == 2);
  CHECK(focus_order(lyapunov_ff(std::vector<Poly>(6, Poly(0)), std::vector<Poly>(6, Poly(0)), 4)).kind ==
        FocusOrder::Kind::CenterUpToOrder);

  Ring r = make_ring({});
  CHECK(smooth_focus_order(r, {P(r, "-y + x^2 + x*y"), P(r, "x + 2*x*y")}, 4).value_or(-1) == 1);
  CHECK(!smooth_focus_order(r, {P(r, "-y"), P(r, "x")}, 4));
  CHECK(smooth_focus_order(r, {P(r, "x - y"), P(r, "x + y")}, 3).value_or(-1) == 0);
}

TEST_CASE("possible orders") {
  auto a = possible_orders(BoundaryKind::FF, 0, std::nullopt);
  CHECK(a.label == "a");
  CHECK(a.finite == std::vector<int>{0});
  auto b = possible_orders(BoundaryKind::FF, 2, 5);
  CHECK(b.label == "b");
  CHECK(b.finite == std::vector<int>{1, 3, 4});
  CHECK(!b.admits_center_up_to(6));
  auto e = possible_orders(BoundaryKind::FP, 1, std::nullopt);
  CHECK(e.label == "e");
  CHECK(e.finite == std::vector<int>{1, 2});
  auto c = possible_orders(BoundaryKind::FF, 2, 2);
  CHECK(c.contains(1));
  CHECK(c.contains(3));
  CHECK(!c.contains(2));
  CHECK(c.contains(4));
  CHECK(c.contains(11));
  CHECK(possible_orders(BoundaryKind::FF, 0, 0).contains(5));
  CHECK(possible_orders(BoundaryKind::FP, 0, std::nullopt).finite == std::vector<int>{0});
  auto inf = possible_orders(BoundaryKind::FF, std::nullopt, std::nullopt);
  CHECK(inf.contains(7));
  CHECK(!inf.contains(2));
  CHECK(inf.center);
  CHECK_THROWS_AS(possible_orders(BoundaryKind::PP, 1, 1), InputError);
}

TEST_CASE("center of the truncation") {
  Ring r = make_ring({"a"});
  Poly av = Poly::var(r, "a");
  std::vector<Poly> gp = {Poly(0), Poly(1), av, Poly(3), Poly(0)};
  std::vector<Poly> gm = {Poly(0), Poly(-1), av, Poly(-3), Poly(0)};
  CHECK(center_truncation_check(BoundaryKind::FF, gp, gm, 3).center);
  gm[2] = av.scaled(2);
  auto t = center_truncation_check(BoundaryKind::FF, gp, gm, 3);
  CHECK(!t.center);
  CHECK(t.witness == 2);
  auto f = center_truncation_check(BoundaryKind::FP, {Poly(0), Poly(0), Poly(0), Poly(5)}, {}, 3);
  CHECK(!f.center);
  CHECK(f.witness == 3);
  CHECK(center_truncation_check(BoundaryKind::PP, {Poly(0), Poly(0), Poly(0), Poly(2), Poly(0), Poly(1)}, {}, 4).center);
}

TEST_CASE("abstract cross-checks") {
  CHECK(all_agree(crosscheck_abstract_ff(0, 5)));
  CHECK(all_agree(crosscheck_abstract_fp(5)));
  for (int ell = 1; ell <= 3; ++ell) CHECK(all_agree(crosscheck_abstract_pp(ell, 6)));
  auto rep = crosscheck_abstract_ff(Rational(1, 2), 4);
  CHECK(rep.ok());
  CHECK(rep.discrepancy());
  for (const auto& e : rep.entries) {
    CAPTURE(e.k);
    CHECK(e.status == (e.k >= 3 ? CrossStatus::FactorDiscrepancy : CrossStatus::Agree));
  }
}

TEST_CASE("duplicated smooth systems have no even-index constants") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  Ring r = make_ring({});
  for (int t = 0; t < 5; ++t) {
    auto c = [&] { return std::to_string(d(rng)); };
    std::string X = "-y + " + c() + "*x^2 + " + c() + "*x*y + " + c() + "*y^3 + " + c() + "*x^2*y";
    std::string Y = "x + " + c() + "*y^2 + " + c() + "*x*y + " + c() + "*x^3";
    PiecewiseSystem s{r, {P(r, X), P(r, Y)}, {P(r, X), P(r, Y)}, {}};
    auto a = analyze(s, 6);
    for (int k = 2; k <= 7; k += 2) CHECK(a.seq.at(k).L.is_zero());
  }
}

TEST_CASE("free constants do not change the reduced constants") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(-3, 3);
  Ring r = make_ring({"a", "b"});
  for (int t = 0; t < 3; ++t) {
    auto c = [&] { return std::to_string(d(rng)); };
    PiecewiseSystem s{r,
                      {P(r, "-y + a*x^2 + " + c() + "*x*y"), P(r, "x + " + c() + "*y^2 + b*x*y")},
                      {P(r, "-y + " + c() + "*x^2"), P(r, "x + " + c() + "*x*y + b*y^2")},
                      {}};
    AnalyzeOptions o;
    o.C = {Poly(0), Poly(0)};
    for (int k = 2; k <= 5; ++k) o.C.push_back(Poly(Rational(d(rng), 2)));
    auto a0 = analyze(s, 4), a1 = analyze(s, 4, o);
    for (int k = 1; k <= 5; ++k) CHECK(a0.seq.at(k).reduced == a1.seq.at(k).reduced);
  }
}
