#include "pwsnf/nf_focus.hpp"

#include "pwsnf/errors.hpp"

namespace pwsnf {

namespace {

const Ring& field_ring(const Field& f) { return f.X.ring() ? f.X.ring() : f.Y.ring(); }

Poly at(const std::vector<Poly>& v, std::size_t k) { return k < v.size() ? v[k] : Poly(0); }

// Degree m+1 part of the field must be nu*y^m*(x, y) + eta*y^m*(-y, x).
void check_resonant(const VectorField& F, int m, const Poly& nu, const Poly& eta) {
  Weights w{1, 1};
  XYSeries ex, ey;
  xy_add_into(ex, {{{1, m}, nu}});
  xy_add_into(ex, {{{0, m + 1}, -eta}});
  xy_add_into(ey, {{{1, m}, eta}});
  xy_add_into(ey, {{{0, m + 1}, nu}});
  XYSeries dx = xy_component(F.X, w, m + 1), dy = xy_component(F.Y, w, m + 1);
  xy_add_into(dx, ex, Poly(-1));
  xy_add_into(dy, ey, Poly(-1));
  if (!dx.empty() || !dy.empty())
    throw Error("focus reduction self-check failed at order " + std::to_string(m) +
                ": transformed field is not resonant");
}

}  // namespace

RotationForm to_rotation_form(const Field& f, int cap) {
  const Ring& r = field_ring(f);
  auto num = [](const Poly& p) {
    if (!p.is_constant()) throw InputError("linear part must be numeric, got " + p.str());
    return p.constant_value();
  };
  Rational a = num(f.X.xy_coefficient(1, 0)), b = num(f.X.xy_coefficient(0, 1));
  Rational c = num(f.Y.xy_coefficient(1, 0)), d = num(f.Y.xy_coefficient(0, 1));
  if (c.is_zero()) throw InputError("focus linear part has c = 0");
  Rational disc = (a - d) * (a - d) + b * c * 4;
  if (disc.sign() >= 0) throw InputError("linear part is not a focus");
  Rational b2 = -disc / 4;
  mpz_class rn = sqrt(b2.num()), rd = sqrt(b2.den());
  if (rn * rn != b2.num() || rd * rd != b2.den())
    throw InputError("irrational rotation rate: det - trace^2/4 must be a rational square");
  RotationForm rf;
  rf.alpha = (a + d) / 2;
  rf.beta = Rational(rn, rd);
  if (c.sign() < 0) rf.beta = -rf.beta;
  rf.q1 = c / rf.beta;
  rf.q2 = (a - rf.alpha) / rf.beta;
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y());
  std::map<std::size_t, Poly> sub{{r->x(), x + y.scaled(rf.q2)}, {r->y(), y.scaled(rf.q1)}};
  Poly X = f.X.substitute(sub), Y = f.Y.substitute(sub);
  Poly U = X - Y.scaled(rf.q2 / rf.q1), V = Y.scaled(Rational(1) / rf.q1);
  Weights w{1, 1};
  rf.field = {xy_truncate(xy_from_poly(U), w, cap), xy_truncate(xy_from_poly(V), w, cap)};
  return rf;
}

FocusNF reduce_focus(const RotationForm& rf, int N, const std::vector<Poly>& C) {
  if (N < 1) throw InputError("order N must be at least 1");
  const Rational &al = rf.alpha, &be = rf.beta;
  FocusNF nf;
  nf.N = N;
  nf.alpha = al;
  nf.beta = be;
  nf.q1 = rf.q1;
  nf.q2 = rf.q2;
  nf.nu.assign(N + 2, Poly(0));
  nf.eta.assign(N + 2, Poly(0));
  nf.C.assign(N + 2, Poly(0));
  nf.steps.resize(N + 1);
  nf.boundary.q1 = rf.q1;
  nf.boundary.r.assign(N + 2, Poly(0));
  nf.boundary.s.assign(N + 2, Poly(0));
  const Weights w{1, 1};
  const int cap = N + 1;
  VectorField cur{xy_truncate(rf.field.X, w, cap), xy_truncate(rf.field.Y, w, cap)};
  for (int m = 1; m <= N; ++m) {
    auto ah = [&](int i, int j) { return xy_coeff(cur.X, i, j); };
    auto bh = [&](int i, int j) { return xy_coeff(cur.Y, i, j); };
    std::vector<Poly> p(m + 2, Poly(0)), q(m + 2, Poly(0));  // p[j] = p_{m+1-j,j}
    const Poly Cm = at(C, m + 1);
    nf.C[m + 1] = Cm;
    p[0] = Cm;
    p[1] = (ah(m + 1, 0) - Cm.scaled(al * m)).scaled(Rational(1) / be);
    q[1] = bh(m + 1, 0).scaled(Rational(1) / be) + Cm;
    for (int k = 1; k <= m - 1; ++k) {
      Rational den = be * (k + 1);
      p[k + 1] = (ah(m - k + 1, k) + p[k - 1].scaled(be * (m - k + 2)) - p[k].scaled(al * m) - q[k].scaled(be))
                     .scaled(Rational(1) / den);
      Poly qprev = k >= 2 ? q[k - 1].scaled(be * (m - k + 2)) : Poly(0);
      q[k + 1] = (bh(m - k + 1, k) + qprev - q[k].scaled(al * m) + p[k].scaled(be)).scaled(Rational(1) / den);
    }
    Poly U1 = ah(1, m) - bh(0, m + 1) + (p[m - 1] - q[m]).scaled(be * 2) - p[m].scaled(al * m);
    Poly U2 = ah(0, m + 1) + bh(1, m) + (p[m] + q[m - 1]).scaled(be * 2) - q[m].scaled(al * m);
    Rational D = al * al * (m * m) + be * be * ((m + 2) * (m + 2));
    p[m + 1] = (U1.scaled(be * (m + 2)) + U2.scaled(al * m)).scaled(Rational(1) / D);
    q[m + 1] = (U2.scaled(be * (m + 2)) - U1.scaled(al * m)).scaled(Rational(1) / D);
    Poly nu = -q[m + 1].scaled(al * m) + p[m + 1].scaled(be) + q[m].scaled(be) + bh(0, m + 1);
    Poly eta = p[m + 1].scaled(al * m) + q[m + 1].scaled(be) - p[m].scaled(be) - ah(0, m + 1);
    VectorField g;
    for (int j = 0; j <= m + 1; ++j) {
      if (!p[j].is_zero()) g.X.emplace(std::make_pair(m + 1 - j, j), p[j]);
      if (!q[j].is_zero()) g.Y.emplace(std::make_pair(m + 1 - j, j), q[j]);
    }
    cur = near_identity_transform(cur, g, w, cap, cap);
    check_resonant(cur, m, nu, eta);
    nf.nu[m + 1] = nu;
    nf.eta[m + 1] = eta;
    nf.boundary.r[m + 1] = p[0];
    nf.boundary.s[m + 1] = q[0];
    nf.steps[m] = {std::move(p), std::move(q)};
  }
  return nf;
}

void time_rescale_focus(FocusNF& nf) {
  const int N = nf.N;
  const Rational ib = Rational(1) / nf.beta;
  nf.T.assign(N + 1, Poly(0));
  nf.gamma.assign(N + 2, Poly(0));
  for (int k = 1; k <= N; ++k) {
    Poly acc = nf.eta[k + 1];
    for (int i = 1; i <= k - 1; ++i) acc -= nf.T[k - i] * nf.eta[i + 1];
    nf.T[k] = acc.scaled(ib);
  }
  nf.gamma[1] = Poly(nf.alpha * ib);
  for (int k = 1; k <= N; ++k) {
    Poly acc = nf.nu[k + 1];
    for (int i = 1; i <= k - 1; ++i) acc -= nf.T[k - i] * nf.nu[i + 1];
    acc -= nf.T[k].scaled(nf.alpha);
    nf.gamma[k + 1] = acc.scaled(ib);
  }
}

FocusNF focus_normal_form(const Field& f, int N, const std::vector<Poly>& C) {
  FocusNF nf = reduce_focus(to_rotation_form(f, N + 1), N, C);
  time_rescale_focus(nf);
  return nf;
}

LowerFocusNF reduce_lower_focus(const Field& lower, int N, const std::vector<Poly>& C) {
  LowerFocusNF out;
  out.flipped = focus_normal_form(reflect_reverse(lower), N, C);
  out.gamma_lower.assign(N + 2, Poly(0));
  for (int k = 1; k <= N + 1; ++k) out.gamma_lower[k] = k % 2 ? -out.flipped.gamma[k] : out.flipped.gamma[k];
  return out;
}

FocusRecomposition recompose_focus_scaling(const Rational& alpha, const Rational& beta, const std::vector<Poly>& nu,
                                           const std::vector<Poly>& eta, const std::vector<Poly>& T, int N) {
  // Along y-powers: A(y) = (alpha + sum nu_{k+1} y^k) s(y) / beta, B(y) = (beta + sum eta_{k+1} y^k) s(y) / beta,
  // with s(y) = 1 - sum T_k y^k; the scaled field is x*A - y*B, x*B + y*A.
  std::vector<Poly> a(N + 1, Poly(0)), b(N + 1, Poly(0)), s(N + 1, Poly(0));
  a[0] = Poly(alpha);
  b[0] = Poly(beta);
  s[0] = Poly(1);
  for (int k = 1; k <= N; ++k) {
    a[k] = at(nu, k + 1);
    b[k] = at(eta, k + 1);
    s[k] = -at(T, k);
  }
  FocusRecomposition out;
  out.eta_tilde.assign(N + 1, Poly(0));
  out.gamma.assign(N + 2, Poly(0));
  const Rational ib = Rational(1) / beta;
  for (int k = 0; k <= N; ++k) {
    Poly A(0), B(0);
    for (int i = 0; i <= k; ++i) {
      A += a[i] * s[k - i];
      B += b[i] * s[k - i];
    }
    out.gamma[k + 1] = A.scaled(ib);
    if (k >= 1) out.eta_tilde[k] = B.scaled(ib);
  }
  return out;
}

}  // namespace pwsnf
