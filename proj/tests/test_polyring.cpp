#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pwsnf/errors.hpp"
#include "pwsnf/groebner.hpp"
#include "pwsnf/poly.hpp"

using namespace pwsnf;

namespace {

Poly random_poly(const Ring& r, std::mt19937& rng, int terms, int maxdeg, bool with_xy) {
  std::uniform_int_distribution<long> c(-6, 6);
  std::size_t nsym = with_xy ? r->size() : r->num_params();
  std::uniform_int_distribution<std::size_t> sym(0, nsym - 1);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  Poly p(r, 0);
  for (int t = 0; t < terms; ++t) {
    Poly m(r, Rational(c(rng), 1 + std::abs(c(rng))));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * Poly::var(r, sym(rng));
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("basic arithmetic and canonical text") {
  Ring r = make_ring({"p20", "q11"});
  Poly x = Poly::var(r, "x"), y = Poly::var(r, "y");
  CHECK(((x + y) * (x - y)).str() == "x^2 - y^2");
  CHECK((x + Poly(r, 0)) == x);
  Poly a = Poly::var(r, "p20") * x.pow(2), b = Poly::var(r, "q11") * x * y;
  CHECK((a * b).str() == "p20*q11*x^3*y");
  CHECK((Poly(r, Rational(2, 3)) * Poly::var(r, "p20") - x).str() == "2/3*p20 - x");
  CHECK_THROWS_AS(Poly::var(r, "z"), InputError);
  Ring other = make_ring({"a"});
  CHECK_THROWS_AS(x + Poly::var(other, "a"), InputError);
}

TEST_CASE("grevlex order") {
  Ring r = make_ring({"a", "b", "c"}, false);
  Poly a = Poly::var(r, "a"), b = Poly::var(r, "b"), c = Poly::var(r, "c");
  // degree first, then the smaller power of the last variable wins
  CHECK((a * c + b * b + a * a + c).str() == "a^2 + b^2 + a*c + c");
}

TEST_CASE("partial derivatives") {
  Ring r = make_ring({});
  Poly x = Poly::var(r, "x"), y = Poly::var(r, "y");
  CHECK(x.pow(3).derivative("x", 2) == (x * Poly(6)));
  CHECK((x * x * y).derivative("y", 1) == x * x);
  CHECK(x.pow(2).derivative("x", 3).is_zero());
}

TEST_CASE("quasi-homogeneous components") {
  Ring r = make_ring({"p"});
  Poly x = Poly::var(r, "x"), y = Poly::var(r, "y");
  Poly f = x.pow(3) + y;
  CHECK(f.quasi_component(QuasiGrading(1), 3) == x.pow(3));
  CHECK(f.quasi_component(QuasiGrading(1), 2) == y);
  CHECK((x * x * y).quasi_component(QuasiGrading(2), 6) == x * x * y);
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Poly g = random_poly(r, rng, 8, 6, true);
    for (int ell = 1; ell <= 3; ++ell) {
      Poly sum(r, 0);
      for (int k = 0; k <= 6 * 2 * ell; ++k) sum += g.quasi_component(QuasiGrading(ell), k);
      CHECK(sum == g);
    }
  }
}

TEST_CASE("substitution and xy coefficients") {
  Ring r = make_ring({"a", "b"});
  Poly a = Poly::var(r, "a"), b = Poly::var(r, "b"), x = Poly::var(r, "x"), y = Poly::var(r, "y");
  Poly f = a * x * x + b * x * y + a * b;
  CHECK(f.substitute(r->index("a"), b + 1) == (b + 1) * x * x + b * x * y + (b + 1) * b);
  auto co = f.xy_coefficients();
  CHECK(co.at({2, 0}) == a);
  CHECK(co.at({1, 1}) == b);
  CHECK(co.at({0, 0}) == a * b);
  CHECK(Poly::from_xy(r, co) == f);
  CHECK(f.xy_coefficient(1, 1) == b);
}

TEST_CASE("reduce_mod_set examples") {
  Ring r = make_ring({"p11", "q02", "q20"}, false);
  Poly p11 = Poly::var(r, "p11"), q02 = Poly::var(r, "q02"), q20 = Poly::var(r, "q20");
  Poly g = p11 + q02 * Poly(2) + q20;
  CHECK(reduce_mod_set(g, {g}).is_zero());

  Ring s = make_ring({"a", "b"}, false);
  CHECK(reduce_mod_set(Poly::var(s, "a") * Poly::var(s, "b"), {Poly::var(s, "a")}).is_zero());

  // Linear generator: the oracle is plain substitution a2 = -2 b1.
  Ring t = make_ring({"a2", "b1", "b2", "b3"}, false);
  Poly a2 = Poly::var(t, "a2"), b1 = Poly::var(t, "b1"), b2 = Poly::var(t, "b2"), b3 = Poly::var(t, "b3");
  Poly f = Poly(9) * a2 * a2 - Poly(4) * b3 * b3 - Poly(4) * b2;
  Poly red = reduce_mod_set(f, {a2 + Poly(2) * b1});
  CHECK(red == f.substitute(t->index("a2"), -Poly(2) * b1));
  CHECK(red == Poly(36) * b1 * b1 - Poly(4) * b3 * b3 - Poly(4) * b2);
}

TEST_CASE("ideal membership for explicit combinations, idempotence") {
  Ring r = make_ring({"a", "b", "c", "d"}, false);
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Poly> G;
    int ng = 2 + t % 2;
    for (int i = 0; i < ng; ++i) G.push_back(random_poly(r, rng, 3, 2 + (t % 2), false));
    Poly comb(r, 0);
    for (const auto& g : G) comb += random_poly(r, rng, 3, 2, false) * g;
    CHECK(reduce_mod_set(comb, G).is_zero());
    Poly f = random_poly(r, rng, 6, 3, false);
    Poly once = reduce_mod_set(f, G);
    CHECK(reduce_mod_set(once, G) == once);
    CHECK(reduce_mod_set(f + comb, G) == once);
  }
}

TEST_CASE("Groebner basis of a classic ideal and budget error") {
  Ring r = make_ring({"a", "b", "c"}, false);
  Poly a = Poly::var(r, "a"), b = Poly::var(r, "b"), c = Poly::var(r, "c");
  // Cyclic-3
  std::vector<Poly> G = {a + b + c, a * b + b * c + c * a, a * b * c - Poly(1)};
  auto gb = groebner_basis(G);
  CHECK(Ideal(G).contains(c.pow(3) - Poly(1)));
  CHECK_FALSE(Ideal(G).contains(c - Poly(1)));
  for (const auto& g : gb) CHECK(g.leading().c == Rational(1));
  GroebnerOptions tiny;
  tiny.step_budget = 3;
  CHECK_THROWS_AS(groebner_basis(G, tiny), ResourceError);
  CHECK(Ideal({a, a - Poly(1)}).is_unit());
  CHECK_THROWS_AS(reduce_mod_set(Poly::var(make_ring({}), "x"), {Poly(1)}), InputError);
}
