#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pwsnf/poly.hpp"

namespace pwsnf {

struct Field {
  Poly X, Y;
};

// Upper field on y > 0, lower field on y < 0, switching line y = 0.
struct PiecewiseSystem {
  Ring ring;
  Field upper, lower;
  std::vector<std::string> orientation_record;
  std::vector<std::string> params() const { return ring->params(); }
};

using Substitutions = std::vector<std::pair<std::string, std::string>>;  // name = expression

// TOML input: [params] names = [...]; [upper] X = "...", Y = "..."; [lower] X = ..., Y = ...
// Substituted parameters are removed from the ring; their values may use the remaining ones.
PiecewiseSystem parse_system(const std::string& toml_text, const Substitutions& sets = {});
PiecewiseSystem load_system(const std::string& path, const Substitutions& sets = {});
PiecewiseSystem make_system(const Ring& ring, const std::string& Xu, const std::string& Yu, const std::string& Xl,
                            const std::string& Yl);

// Coordinate changes applied to one subsystem.
Field mirror_x(const Field& f);        // (x, y, t) -> (-x, y, t)
Field rotate_half_turn(const Field& f);  // (x, y, t) -> (-x, -y, t)
Field reflect_reverse(const Field& f);   // (x, y, t) -> (x, -y, -t): lower side in upper convention
Field time_scaled(const Field& f, const Rational& c);

enum class SideKind { Focus, Tangency };

struct SideInfo {
  SideKind kind = SideKind::Focus;
  // Focus: linear part ((a, b), (c, d)) with eigenvalues alpha +- beta i; beta carries the sign of c.
  Rational a, b, c, d, alpha, beta;
  // Tangency: X(0,0) = a0, first nonzero d^j Y/dx^j(0,0)/j! = bt at j = 2*ell - 1.
  int ell = 0;
  Rational a0, bt;
  bool counterclockwise = true;
};

enum class BoundaryKind { FF, FP, PP, NotMonodromic };
std::string to_string(BoundaryKind k);

struct BoundaryClass {
  BoundaryKind kind = BoundaryKind::NotMonodromic;
  std::string reason;        // set for NotMonodromic
  SideInfo upper, lower;     // in the normalized frame
  PiecewiseSystem normalized;  // counterclockwise, FP rather than PF
};

// Throws InputError("parameter-dependent type ...") when a deciding coefficient is symbolic.
BoundaryClass classify(const PiecewiseSystem& sys);

// Restriction of one side's coordinate change to the switching line: the map is the
// composition of x -> x + r[k] x^k for k = 2, 3, ... (in that order) after a linear part
// fixing the line; s[k] are the x^k coefficients of the second component (must vanish).
struct BoundaryMap {
  Rational q1;
  std::vector<Poly> r;  // r[k], k >= 2 (entries 0, 1 unused)
  std::vector<Poly> s;
};

struct ConsistencyReport {
  bool ok = true;
  int first_mismatch = 0;  // order k of the first differing r[k], 0 if none
  std::vector<std::string> reasons;
};

ConsistencyReport homeomorphism_consistency_check(const BoundaryMap& upper, const BoundaryMap& lower);

}  // namespace pwsnf
