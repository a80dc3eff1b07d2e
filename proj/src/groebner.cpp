#include "pwsnf/groebner.hpp"

#include <algorithm>
#include <list>

#include "pwsnf/errors.hpp"

namespace pwsnf {
namespace {

void check_no_xy(const Poly& p) {
  if (p.involves_xy()) throw InputError("ideal reduction expects parameter-only polynomials: " + p.str());
}

void charge(std::size_t* steps, std::size_t budget) {
  if (steps && ++*steps > budget)
    throw ResourceError("Groebner step budget exhausted (" + std::to_string(budget) +
                        " steps); raise --budget or add parameter values");
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

Poly spoly(const Poly& f, const Poly& g, const Monomial& l) {
  const Term& a = f.leading();
  const Term& b = g.leading();
  Poly s = f.mul_term(l / a.m, a.c.inverse());
  return s.add_scaled(g, -b.c.inverse(), l / b.m);
}

}  // namespace

Poly divide_remainder(const Poly& f, const std::vector<Poly>& G, std::size_t* steps, std::size_t budget) {
  std::vector<Term> rem;
  Poly p = f;
  while (!p.is_zero()) {
    const Term& lt = p.leading();
    const Poly* div = nullptr;
    for (const auto& g : G)
      if (!g.is_zero() && g.leading().m.divides(lt.m)) {
        div = &g;
        break;
      }
    charge(steps, budget);
    if (div) {
      p = p.add_scaled(*div, -(lt.c / div->leading().c), lt.m / div->leading().m);
    } else {
      rem.push_back(lt);
      std::vector<Term> rest(p.terms().begin() + 1, p.terms().end());
      p = Poly::from_terms(p.ring(), std::move(rest));
    }
  }
  return Poly::from_terms(f.ring(), std::move(rem));
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const GroebnerOptions& opt) {
  std::size_t steps = 0;
  const std::size_t budget = opt.step_budget;
  std::vector<Poly> polys;  // every basis element ever added; indices are stable
  std::vector<bool> active;
  std::vector<Pair> pairs;

  auto add = [&](Poly h) {
    h = h.monic();
    const Monomial& lh = h.leading().m;
    std::size_t hi = polys.size();
    // Gebauer-Moller: drop old pairs made redundant by h.
    std::vector<Pair> kept;
    for (auto& pr : pairs) {
      bool redundant = lh.divides(pr.lcm) && !(lcm(polys[pr.i].leading().m, lh) == pr.lcm) &&
                       !(lcm(polys[pr.j].leading().m, lh) == pr.lcm);
      if (!redundant) kept.push_back(std::move(pr));
    }
    pairs = std::move(kept);
    // Candidate new pairs (g, h).
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < polys.size(); ++g)
      if (active[g]) cand.push_back({g, hi, lcm(polys[g].leading().m, lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool cop = coprime(polys[cand[a].i].leading().m, lh);
      bool dominated = false;
      if (!cop) {
        for (std::size_t b = 0; b < cand.size() && !dominated; ++b) {
          if (b == a) continue;
          if (cand[b].lcm.divides(cand[a].lcm) && !(cand[b].lcm == cand[a].lcm && b > a)) dominated = true;
        }
      }
      if (!dominated) D.push_back(cand[a]);
    }
    for (auto& pr : D)
      if (!coprime(polys[pr.i].leading().m, lh)) pairs.push_back(pr);
    for (std::size_t g = 0; g < polys.size(); ++g)
      if (active[g] && lh.divides(polys[g].leading().m)) active[g] = false;
    polys.push_back(std::move(h));
    active.push_back(true);
  };

  auto current = [&] {
    std::vector<Poly> G;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (active[i]) G.push_back(polys[i]);
    return G;
  };

  for (const auto& g : gens) {
    check_no_xy(g);
    if (g.is_zero()) continue;
    Poly r = divide_remainder(g, current(), &steps, budget);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Poly(r.ring(), 1)};
    add(r);
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(),
                                 [](const Pair& a, const Pair& b) { return grevlex_cmp(a.lcm, b.lcm) < 0; });
    Pair pr = *best;
    pairs.erase(best);
    charge(&steps, budget);
    Poly s = spoly(polys[pr.i], polys[pr.j], pr.lcm);
    Poly r = divide_remainder(s, current(), &steps, budget);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {Poly(r.ring(), 1)};
    add(r);
  }

  // Reduce: minimal basis, then tail-reduce each element by the others.
  std::vector<Poly> G = current();
  std::sort(G.begin(), G.end(), [](const Poly& a, const Poly& b) { return grevlex_cmp(a.leading().m, b.leading().m) < 0; });
  std::vector<Poly> minimal;
  for (const auto& g : G) {
    bool redundant = false;
    for (const auto& h : minimal)
      if (h.leading().m.divides(g.leading().m)) redundant = true;
    if (!redundant) minimal.push_back(g);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(divide_remainder(minimal[i], others, &steps, budget).monic());
  }
  return reduced;
}

Poly reduce_mod_set(const Poly& f, const std::vector<Poly>& G, const GroebnerOptions& opt) {
  check_no_xy(f);
  return Ideal(G, opt).reduce(f);
}

Ideal::Ideal(const std::vector<Poly>& gens, const GroebnerOptions& opt) : basis_(groebner_basis(gens, opt)) {}

Poly Ideal::reduce(const Poly& f) const {
  if (basis_.empty()) return f;
  if (is_unit()) return Poly(f.ring(), 0);
  return divide_remainder(f, basis_);
}

}  // namespace pwsnf
