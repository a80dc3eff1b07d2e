#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pwsnf/errors.hpp"
#include "pwsnf/parser.hpp"
#include "pwsnf/series.hpp"
#include "pwsnf/system.hpp"

using namespace pwsnf;

namespace {

const std::string kData = PWSNF_DATA_DIR;

Poly P(const Ring& r, const std::string& s) { return parse_poly(s, r); }

}  // namespace

TEST_CASE("parser: grammar and errors") {
  Ring r = make_ring({"a", "b"});
  CHECK(P(r, "-(a + 1/2*x)^2") == -(Poly::var(r, "a") + Poly::var(r, "x").scaled(Rational(1, 2))).pow(2));
  CHECK(P(r, "x^(2*3 - 1)") == Poly::var(r, r->x(), 5));
  CHECK(P(r, "2*-y") == Poly::var(r, r->y()).scaled(-2));
  try {
    P(r, "x + + y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.token == 3);
    CHECK(e.column == 5);
  }
  CHECK_THROWS_AS(P(r, "x + z"), ParseError);
  CHECK_THROWS_AS(P(r, "x^a"), ParseError);
  CHECK_THROWS_AS(P(r, "x^(a)"), ParseError);
  CHECK_THROWS_AS(P(r, "(x + y"), ParseError);
  CHECK_THROWS_AS(P(r, "x $ y"), ParseError);
  std::map<std::string, Poly> bound{{"a", Poly(3)}};
  CHECK(parse_poly("x^(a - 1)", r, bound) == Poly::var(r, r->x(), 2));
}

TEST_CASE("system files: parse and substitute") {
  auto s = load_system(kData + "/ex51.toml");
  CHECK(s.params().size() == 6);
  CHECK(s.lower.X == -Poly::var(s.ring, s.ring->y()));
  auto t = load_system(kData + "/ex52.toml", {{"delta", "0"}, {"a4", "2*a3"}});
  CHECK(t.params().size() == 7);
  CHECK(t.upper.Y.xy_coefficient(1, 1) == Poly::var(t.ring, "a3").scaled(4));
  CHECK_THROWS_AS(load_system(kData + "/ex52.toml", {{"zeta", "0"}}), InputError);
  CHECK_THROWS_AS(parse_system("[upper]\nX = \"x +\"\nY = \"x\"\n[lower]\nX=\"1\"\nY=\"x\""), ParseError);
  CHECK_THROWS_AS(parse_system("[upper\n"), ParseError);
  CHECK_THROWS_AS(parse_system("[upper]\nX = \"1\"\n"), InputError);
  CHECK_THROWS_AS(load_system(kData + "/nonexistent.toml"), InputError);
}

TEST_CASE("classify: examples") {
  auto c1 = classify(load_system(kData + "/ex51.toml"));
  CHECK(c1.kind == BoundaryKind::FF);
  CHECK(c1.upper.beta == Rational(1));
  CHECK(c1.normalized.orientation_record.empty());

  auto c2 = classify(load_system(kData + "/ex52.toml", {{"delta", "0"}}));
  CHECK(c2.kind == BoundaryKind::FP);
  CHECK(c2.lower.ell == 1);
  CHECK(c2.lower.a0 == Rational(1));
  CHECK_THROWS_AS(classify(load_system(kData + "/ex52.toml")), InputError);

  for (int kp = 1; kp <= 3; ++kp)
    for (int km = 1; km <= 3; ++km) {
      auto s = load_system(kData + "/ex53.toml", {{"kplus", std::to_string(kp)}, {"kminus", std::to_string(km)}});
      auto c = classify(s);
      CHECK(c.kind == BoundaryKind::PP);
      CHECK(c.upper.ell == kp);
      CHECK(c.lower.ell == km);
      CHECK(c.upper.a0.sign() < 0);
      CHECK(c.lower.a0.sign() > 0);
      CHECK(c.normalized.orientation_record.size() == 1);
    }
}

TEST_CASE("classify: rejections and PF swap") {
  Ring r = make_ring({});
  // saddle-like upper part
  CHECK(classify(make_system(r, "y", "x", "-y", "x")).kind == BoundaryKind::NotMonodromic);
  // transversal crossing
  CHECK(classify(make_system(r, "-y", "1 + x", "-y", "x")).kind == BoundaryKind::NotMonodromic);
  // opposite senses
  CHECK(classify(make_system(r, "-y", "x", "y", "-x")).kind == BoundaryKind::NotMonodromic);
  // visible fold above
  CHECK(classify(make_system(r, "-1", "-x", "-y", "x")).kind == BoundaryKind::NotMonodromic);
  // even multiplicity
  CHECK(classify(make_system(r, "-1", "-x^2", "-y", "x")).kind == BoundaryKind::NotMonodromic);

  // PF: invisible fold above, focus below; becomes FP with the same type data.
  auto pf = classify(make_system(r, "-1", "x", "-y + x^2", "x"));
  CHECK(pf.kind == BoundaryKind::FP);
  CHECK(pf.normalized.orientation_record.size() == 1);
  CHECK(pf.lower.ell == 1);
  CHECK(pf.upper.beta == Rational(1));
}

TEST_CASE("classify: invariance under time scaling and the half-turn swap") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-4, 4);
  Ring r = make_ring({});
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto rc = [&] { return std::to_string(c(rng)); };
    std::string al = rc();
    std::string Xu = al + "*x - y + " + rc() + "*x^2", Yu = "x + " + al + "*y + " + rc() + "*x*y";
    std::string Xl = (trial % 2 ? "1" : "-y") + std::string(" + ") + rc() + "*x*y";
    std::string Yl = "x + " + rc() + "*y^2";
    auto sys = make_system(r, Xu, Yu, Xl, Yl);
    auto base = classify(sys);
    for (Rational k : {Rational(2), Rational(1, 3), Rational(-1)}) {
      PiecewiseSystem s2 = sys;
      s2.upper = time_scaled(sys.upper, k);
      s2.lower = time_scaled(sys.lower, k);
      CHECK(classify(s2).kind == base.kind);
    }
    // Half-turn exchanges the half planes: (upper, lower) -> (R lower, R upper).
    PiecewiseSystem sw = sys;
    sw.upper = rotate_half_turn(sys.lower);
    sw.lower = rotate_half_turn(sys.upper);
    CHECK(classify(sw).kind == base.kind);
    if (base.kind != BoundaryKind::NotMonodromic) ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("boundary consistency check") {
  Ring r = make_ring({"a"});
  BoundaryMap u{Rational(1), {Poly(0), Poly(0), Poly::var(r, "a"), Poly(0)}, {}};
  BoundaryMap l = u;
  CHECK(homeomorphism_consistency_check(u, l).ok);
  l.r[3] = Poly(1);
  auto rep = homeomorphism_consistency_check(u, l);
  CHECK(!rep.ok);
  CHECK(rep.first_mismatch == 3);
  l = u;
  l.q1 = Rational(-2);
  CHECK(!homeomorphism_consistency_check(u, l).ok);
  l = u;
  l.s = {Poly(0), Poly(0), Poly(1)};
  CHECK(!homeomorphism_consistency_check(u, l).ok);
}

TEST_CASE("near-identity transform matches direct substitution") {
  // For F linear and g quadratic, compare against the exact pullback computed with polynomials.
  Ring r = make_ring({"c"});
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y()), cc = Poly::var(r, "c");
  VectorField F{xy_from_poly(-y + cc * x * x), xy_from_poly(x + y * y)};
  VectorField g{xy_from_poly(cc * x * y), xy_from_poly(x * x.scaled(2))};
  const int cap = 5;
  Weights w{1, 1};
  VectorField G = near_identity_transform(F, g, w, cap, cap);
  // D(u + g) G == F(u + g) up to degree cap.
  Poly g1 = xy_to_poly(g.X, r), g2 = xy_to_poly(g.Y, r);
  Poly Gx = xy_to_poly(G.X, r), Gy = xy_to_poly(G.Y, r);
  std::map<std::size_t, Poly> sub{{r->x(), x + g1}, {r->y(), y + g2}};
  Poly Fx = xy_to_poly(F.X, r).substitute(sub), Fy = xy_to_poly(F.Y, r).substitute(sub);
  Poly lx = Gx + g1.derivative(r->x()) * Gx + g1.derivative(r->y()) * Gy;
  Poly ly = Gy + g2.derivative(r->x()) * Gx + g2.derivative(r->y()) * Gy;
  CHECK(xy_truncate(xy_from_poly(lx - Fx), w, cap).empty());
  CHECK(xy_truncate(xy_from_poly(ly - Fy), w, cap).empty());
}
