#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "pwsnf/errors.hpp"
#include "pwsnf/lyapunov.hpp"
#include "pwsnf/real.hpp"
#include "pwsnf/system.hpp"

namespace pwsnf {

// The orbit left the configured neighbourhood of the origin.
struct EscapeError : Error {
  using Error::Error;
};

// The log-log slope of the displacement is not close to an integer.
struct OrderAmbiguous : Error {
  using Error::Error;
};

struct OracleOptions {
  int precision_bits = 128;
  int taylor_order = 24;
  double radius = 1.0;            // neighbourhood of the origin
  std::size_t max_steps = 200000;  // per half return
  unsigned threads = 0;           // 0: hardware concurrency
};

struct OrbitResult {
  Real exit_x;
  std::size_t steps = 0;
  Real error_estimate;  // accumulated local truncation bound
  Real residual;        // |y| at the located crossing
};

enum class Side { Upper, LowerInverse };

// First return to y = 0 of the orbit of f from (x0, 0) through y > 0. f must have rational coefficients.
OrbitResult half_return_field(const Field& f, const Real& x0, const OracleOptions& opt = {});

// Pi+ (Upper) or (Pi-)^{-1} (LowerInverse) of a system in its given frame.
OrbitResult half_return(const PiecewiseSystem& sys, const Real& x0, Side side, const OracleOptions& opt = {});

struct GridSpec {
  double xmax = 1e-2, rho = 0.7;
  int count = 10;
};

struct DisplacementFit {
  std::vector<Real> x, delta, noise;  // samples and per-sample noise floor
  bool center_consistent = false;
  int order = 0;                      // fitted m
  double slope = 0;
  Real coefficient;                   // V^_m
  Real uncertainty;
  std::string str() const;
};

// Samples Delta(x) = (Pi-)^{-1}(x) - Pi+(x) on the grid in the counterclockwise frame of classify().
DisplacementFit fit_displacement(const PiecewiseSystem& sys, const GridSpec& grid, const OracleOptions& opt = {});

void write_csv(std::ostream& os, const DisplacementFit& fit);

struct OracleVerdict {
  bool ok = false;
  bool center = false;       // both sides report a center (up to order N / noise floor)
  int symbolic_order = 0;    // first nonzero index k, 0 when center up to N
  double symbolic_value = 0;  // V_k
  std::string text;
};

// Compares a fit with the symbolic first nonzero constant (relative tolerance rel_tol on V_k).
OracleVerdict compare_with_symbolic(const DisplacementFit& fit, const Analysis& a, double rel_tol = 0.02);

}  // namespace pwsnf
