#pragma once

#include <vector>

#include "pwsnf/poly.hpp"
#include "pwsnf/series.hpp"
#include "pwsnf/system.hpp"

namespace pwsnf {

struct TangencyStep {
  int m = 0;
  std::vector<Poly> alpha;  // alpha[i]: coefficient of x^{m+2-2l i} y^i in the first component
  std::vector<Poly> beta;   // beta[i]: coefficient of x^{m+1+2l-2l i} y^i in the second component
};

struct TangencyNF {
  int N = 0, ell = 0;
  Rational a0, q1;  // a0 = X(0,0); q1 scales y so that Y(x,0) starts with -a0 x^{2l-1}
  bool coupled = false;
  std::vector<Poly> mu;    // index 2..N+1 (uncoupled)
  std::vector<Poly> T;     // index 1..N (uncoupled)
  std::vector<Poly> nu, eta, sigma;  // index 2..N+1 (coupled)
  std::vector<Poly> r0;    // r0[k] = coefficient of x^k of the change, k = 2..N+1
  std::vector<TangencyStep> steps;  // steps[m], m = 0..N-1
  BoundaryMap boundary;
};

// Invisible tangency in upper convention: X(0,0) = a0 != 0, Y(x,0) = bt x^{2l-1} + ..., a0*bt < 0.
// Returns the y-scaled field with weights (1, 2l) and X, Y truncated at weights N and N+2l-1.
VectorField tangency_prescale(const Field& f, int N, int* ell, Rational* a0, Rational* q1);

// Reduction to a0 - sum mu x^k, -a0 x^{2l-1} + sum mu x^{k+2l-1} (plus time scaling T).
TangencyNF tangency_normal_form(const Field& f, int N);

// Same reduction with the x^{k} coefficient of the change pinned to r0[k] (taken from the
// other side); yields separate nu, eta and the ratio coefficients sigma.
TangencyNF tangency_normal_form_coupled(const Field& f, int N, const std::vector<Poly>& r0);

// Lower tangency reduced after (x, y, t) -> (x, -y, -t).
TangencyNF lower_tangency_normal_form(const Field& lower, int N);

// sigma_{k+1}: -Y/X of the coupled normal form is x^{2l-1}(1 + sum sigma_{k+1} x^k) (Bell form).
std::vector<Poly> sigma_from_nu_eta(const Rational& a0, const std::vector<Poly>& nu, const std::vector<Poly>& eta, int N);

// Coefficients of the rescaled first component + 1 (all must vanish) for the given T.
std::vector<Poly> recompose_tangency_scaling(const Rational& a0, const std::vector<Poly>& mu,
                                             const std::vector<Poly>& T, int N);

}  // namespace pwsnf
