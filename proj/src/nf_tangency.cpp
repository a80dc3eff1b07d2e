#include "pwsnf/nf_tangency.hpp"

#include "pwsnf/bell.hpp"
#include "pwsnf/errors.hpp"

namespace pwsnf {

namespace {

const Ring& field_ring(const Field& f) { return f.X.ring() ? f.X.ring() : f.Y.ring(); }

Poly at(const std::vector<Poly>& v, std::size_t k) { return k < v.size() ? v[k] : Poly(0); }

Rational num(const Poly& p, const char* what) {
  if (!p.is_constant()) throw InputError(std::string(what) + " must be numeric, got " + p.str());
  return p.constant_value();
}

void check_step(const VectorField& F, Weights w, int m, const Poly& ex, const Poly& ey) {
  // weight m+1 of X must be ex x^{m+1}, weight m+2l of Y must be ey x^{m+2l}
  XYSeries dx = xy_component(F.X, w, m + 1), dy = xy_component(F.Y, w, m + w.wy);
  xy_add_into(dx, {{{m + 1, 0}, ex}}, Poly(-1));
  xy_add_into(dy, {{{m + w.wy, 0}, ey}}, Poly(-1));
  if (!dx.empty() || !dy.empty())
    throw Error("tangency reduction self-check failed at order " + std::to_string(m));
}

TangencyNF reduce(const Field& f, int N, const std::vector<Poly>* pinned) {
  if (N < 1) throw InputError("order N must be at least 1");
  TangencyNF nf;
  nf.N = N;
  VectorField cur = tangency_prescale(f, N, &nf.ell, &nf.a0, &nf.q1);
  const int L = 2 * nf.ell;
  const Weights w{1, L};
  const Rational a0 = nf.a0;
  nf.coupled = pinned != nullptr;
  nf.mu.assign(N + 2, Poly(0));
  nf.nu.assign(N + 2, Poly(0));
  nf.eta.assign(N + 2, Poly(0));
  nf.r0.assign(N + 2, Poly(0));
  nf.steps.resize(N);
  nf.boundary.q1 = nf.q1;
  nf.boundary.r.assign(N + 2, Poly(0));
  nf.boundary.s.assign(N + 2, Poly(0));
  for (int m = 0; m <= N - 1; ++m) {
    auto ah = [&](int i, int j) { return xy_coeff(cur.X, i, j); };
    auto bh = [&](int i, int j) { return xy_coeff(cur.Y, i, j); };
    const int q = (m + 2) / L, r = (m + 1) / L;
    std::vector<Poly> al(q + 2, Poly(0)), be(r + 2, Poly(0));
    if (r == 0) {
      be[1] = bh(m, 1).scaled(Rational(1) / (a0 * (m + 1)));
    } else {
      if ((m + 1) % L != 0) be[r + 1] = bh(m - L * r, r + 1).scaled(Rational(1) / (a0 * (m + 1 - L * r)));
      for (int i = r; i >= 1; --i) {
        Poly nxt = q - i > 0 ? al[i + 1].scaled(a0 * (i + 1)) : Poly(0);
        al[i] = (ah(m + 1 - L * i, i) + nxt).scaled(Rational(1) / (a0 * (m + 2 - L * i)));
        be[i] = (bh(m + L - L * i, i) + be[i + 1].scaled(a0 * (i + 1)) - al[i].scaled(a0 * (L - 1)))
                    .scaled(Rational(1) / (a0 * (m + 1 + L - L * i)));
      }
    }
    Poly ex, ey;
    if (pinned) {
      al[0] = at(*pinned, m + 2);
      nf.nu[m + 2] = -ah(m + 1, 0) + al[0].scaled(a0 * (m + 2)) - al[1].scaled(a0);
      nf.eta[m + 2] = bh(m + L, 0) - al[0].scaled(a0 * (L - 1)) + be[1].scaled(a0);
      ex = -nf.nu[m + 2];
      ey = nf.eta[m + 2];
    } else {
      al[0] = (ah(m + 1, 0) + bh(m + L, 0) + (al[1] + be[1]).scaled(a0)).scaled(Rational(1) / (a0 * (m + 1 + L)));
      nf.mu[m + 2] = bh(m + L, 0) - al[0].scaled(a0 * (L - 1)) + be[1].scaled(a0);
      ex = -nf.mu[m + 2];
      ey = nf.mu[m + 2];
    }
    VectorField g;
    for (int i = 0; i <= q; ++i)
      if (!al[i].is_zero()) g.X.emplace(std::make_pair(m + 2 - L * i, i), al[i]);
    for (int i = 1; i <= r + 1; ++i)
      if (!be[i].is_zero()) g.Y.emplace(std::make_pair(m + 1 + L - L * i, i), be[i]);
    cur = near_identity_transform(cur, g, w, N, N + L - 1);
    check_step(cur, w, m, ex, ey);
    nf.r0[m + 2] = al[0];
    nf.boundary.r[m + 2] = al[0];
    al.resize(q + 1);
    be.resize(r + 2);
    nf.steps[m] = {m, std::move(al), std::move(be)};
  }
  if (pinned) {
    nf.sigma = sigma_from_nu_eta(a0, nf.nu, nf.eta, N);
  } else {
    nf.T.assign(N + 1, Poly(0));
    for (int k = 1; k <= N; ++k) {
      Poly acc = nf.mu[k + 1];
      for (int i = 1; i <= k - 1; ++i) acc -= nf.T[k - i] * nf.mu[i + 1];
      nf.T[k] = acc.scaled(-Rational(1) / a0);
    }
  }
  return nf;
}

}  // namespace

VectorField tangency_prescale(const Field& f, int N, int* ell, Rational* a0, Rational* q1) {
  const Ring& rg = field_ring(f);
  Rational A0 = num(f.X.xy_coefficient(0, 0), "X(0,0)");
  if (A0.is_zero()) throw InputError("not a tangency: X(0,0) = 0");
  if (!num(f.Y.xy_coefficient(0, 0), "Y(0,0)").is_zero()) throw InputError("not a tangency: Y(0,0) != 0");
  int j = -1;
  Rational bt;
  for (int i = 1; i <= 64; ++i) {
    Poly c = f.Y.xy_coefficient(i, 0);
    if (c.is_zero()) continue;
    bt = num(c, "leading coefficient of Y(x,0)");
    j = i;
    break;
  }
  if (j < 0 || j % 2 == 0) throw InputError("tangency must have odd multiplicity");
  if ((A0 * bt).sign() >= 0) throw InputError("tangency is visible in upper convention");
  *ell = (j + 1) / 2;
  *a0 = A0;
  *q1 = -bt / A0;
  std::map<std::size_t, Poly> sub{{rg->y(), Poly::var(rg, rg->y()).scaled(*q1)}};
  Poly X = f.X.substitute(sub), Y = f.Y.substitute(sub).scaled(Rational(1) / *q1);
  const int L = 2 * *ell;
  Weights w{1, L};
  return {xy_truncate(xy_from_poly(X), w, N), xy_truncate(xy_from_poly(Y), w, N + L - 1)};
}

TangencyNF tangency_normal_form(const Field& f, int N) { return reduce(f, N, nullptr); }

TangencyNF tangency_normal_form_coupled(const Field& f, int N, const std::vector<Poly>& r0) {
  return reduce(f, N, &r0);
}

TangencyNF lower_tangency_normal_form(const Field& lower, int N) { return reduce(reflect_reverse(lower), N, nullptr); }

std::vector<Poly> sigma_from_nu_eta(const Rational& a0, const std::vector<Poly>& nu, const std::vector<Poly>& eta,
                                    int N) {
  std::vector<Poly> args(N);
  for (int j = 1; j <= N; ++j) args[j - 1] = at(nu, j + 1);
  BellPowers<Poly> B(args, N);
  auto etai = [&](int i) { return i == 1 ? Poly(-a0) : at(eta, i); };
  std::vector<Poly> sigma(N + 2, Poly(0));
  for (int k = 1; k <= N; ++k) {
    Poly acc = etai(k + 1).scaled(-Rational(1) / a0);
    for (int j = 1; j <= k; ++j)
      for (int i = 1; i <= j; ++i) acc -= (B.at(j, i) * etai(k - j + 1)).scaled(Rational(1) / a0.pow(i + 1));
    sigma[k + 1] = acc;
  }
  return sigma;
}

std::vector<Poly> recompose_tangency_scaling(const Rational& a0, const std::vector<Poly>& mu, const std::vector<Poly>& T,
                                             int N) {
  // (a0 - sum mu_{j+1} x^j)(1 - sum T_i x^i) / (-a0) = -1 + sum c_k x^k
  std::vector<Poly> c(N + 1, Poly(0));
  for (int k = 1; k <= N; ++k) {
    Poly acc = at(T, k).scaled(-a0) - at(mu, k + 1);
    for (int i = 1; i <= k - 1; ++i) acc += at(T, k - i) * at(mu, i + 1);
    c[k] = acc.scaled(-Rational(1) / a0);
  }
  return c;
}

}  // namespace pwsnf
