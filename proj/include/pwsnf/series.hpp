#pragma once

#include <map>
#include <utility>

#include "pwsnf/poly.hpp"

namespace pwsnf {

// Polynomial in x, y with parameter-polynomial coefficients, keyed by (i, j) for x^i y^j.
using XYSeries = std::map<std::pair<int, int>, Poly>;

struct Weights {
  int wx = 1, wy = 1;
  int of(int i, int j) const { return i * wx + j * wy; }
};

struct VectorField {
  XYSeries X, Y;
};

XYSeries xy_from_poly(const Poly& f);
Poly xy_to_poly(const XYSeries& s, const Ring& r);
Poly xy_coeff(const XYSeries& s, int i, int j);  // zero if absent

void xy_add_into(XYSeries& acc, const XYSeries& s, const Poly& scale = Poly(1));
XYSeries xy_scaled(const XYSeries& s, const Poly& c);
XYSeries xy_truncate(const XYSeries& s, Weights w, int cap);
XYSeries xy_mul(const XYSeries& a, const XYSeries& b, Weights w, int cap);
XYSeries xy_dx(const XYSeries& s);
XYSeries xy_dy(const XYSeries& s);
// Terms of weighted degree exactly k.
XYSeries xy_component(const XYSeries& s, Weights w, int k);

// Field seen in the new coordinates u after the substitution old = u + g(u):
// (I + Dg(u))^{-1} F(u + g(u)), with X kept up to weight capX and Y up to capY.
// Requires every term of g to raise weighted degree (g1 terms of weight > wx, g2 > wy).
VectorField near_identity_transform(const VectorField& F, const VectorField& g, Weights w, int capX, int capY);

}  // namespace pwsnf
