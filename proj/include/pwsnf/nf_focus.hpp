#pragma once

#include <vector>

#include "pwsnf/poly.hpp"
#include "pwsnf/series.hpp"
#include "pwsnf/system.hpp"

namespace pwsnf {

struct RotationForm {
  Rational alpha, beta, q1, q2;
  VectorField field;  // linear part ((alpha, -beta), (beta, alpha))
};

// Linear change old = (x + q2 y, q1 y) bringing the linear part to rotation form.
// Truncates at total degree `cap`.
RotationForm to_rotation_form(const Field& f, int cap);

struct FocusStep {
  std::vector<Poly> p, q;  // p[k] = p_{m+1-k,k}, q[k] = q_{m+1-k,k} of the degree m+1 change
};

struct FocusNF {
  int N = 0;
  Rational alpha, beta, q1, q2;
  std::vector<Poly> nu, eta;  // index 2..N+1
  std::vector<Poly> T;        // index 1..N
  std::vector<Poly> gamma;    // index 1..N+1 (upper convention of the reduced side)
  std::vector<Poly> C;        // free constants used, index 2..N+1
  std::vector<FocusStep> steps;  // steps[m], m = 1..N
  BoundaryMap boundary;
};

// Near-identity reduction of a field already in rotation form, orders m = 1..N.
// C[k] (k = 2..N+1) fixes p_{k,0}; missing entries mean 0. The result fills nu, eta, steps.
// Every step re-checks that the degree m+1 part of the transformed field is resonant.
FocusNF reduce_focus(const RotationForm& rf, int N, const std::vector<Poly>& C = {});

// T_k and gamma_k from (alpha, beta, nu, eta).
void time_rescale_focus(FocusNF& nf);

// Full pipeline for a focus in upper convention (counterclockwise).
FocusNF focus_normal_form(const Field& f, int N, const std::vector<Poly>& C = {});

// Lower focus: reduced after (x, y, t) -> (x, -y, -t); gamma_lower[k] = (-1)^k gamma[k] gives the
// coefficients of the lower block of the FF normal form.
struct LowerFocusNF {
  FocusNF flipped;
  std::vector<Poly> gamma_lower;
};
LowerFocusNF reduce_lower_focus(const Field& lower, int N, const std::vector<Poly>& C = {});

// Re-expands (alpha, beta, nu, eta, T) and returns the eta-tilde coefficients (all must vanish)
// together with the resulting gamma; used as the recomposition oracle.
struct FocusRecomposition {
  std::vector<Poly> eta_tilde;  // index 1..N
  std::vector<Poly> gamma;      // index 1..N+1
};
FocusRecomposition recompose_focus_scaling(const Rational& alpha, const Rational& beta, const std::vector<Poly>& nu,
                                           const std::vector<Poly>& eta, const std::vector<Poly>& T, int N);

}  // namespace pwsnf
