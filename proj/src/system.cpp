#include "pwsnf/system.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "pwsnf/errors.hpp"
#include "pwsnf/parser.hpp"

namespace pwsnf {

namespace {

std::string require_string(const toml::table& tbl, const char* section, const char* key) {
  auto node = tbl[section][key];
  if (!node) throw InputError(std::string("missing [") + section + "] " + key);
  auto v = node.value<std::string>();
  if (!v) throw InputError(std::string("[") + section + "] " + key + " must be a string");
  return *v;
}

Poly subst_xy(const Poly& p, const Poly& nx, const Poly& ny) {
  const Ring& r = p.ring();
  if (!r) return p;
  return p.substitute({{r->x(), nx}, {r->y(), ny}});
}

Rational numeric(const Poly& p, const std::string& what) {
  if (!p.is_constant())
    throw InputError("parameter-dependent type: " + what + " = " + p.str() + " (fix it with --set)");
  return p.constant_value();
}

Rational exact_sqrt(const Rational& q) {
  mpz_class n = q.num(), d = q.den();
  if (n < 0) return Rational(-1);
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return Rational(-1);
  return Rational(rn, rd);
}

struct SideResult {
  bool ok = false;
  std::string reason;
  SideInfo info;
};

SideResult analyze_side(const Field& f, bool upper) {
  const char* side = upper ? "upper" : "lower";
  SideResult res;
  Rational X0 = numeric(f.X.xy_coefficient(0, 0), std::string(side) + " X(0,0)");
  Rational Y0 = numeric(f.Y.xy_coefficient(0, 0), std::string(side) + " Y(0,0)");
  SideInfo& s = res.info;
  if (!Y0.is_zero()) {
    res.reason = std::string(side) + " field crosses the switching line transversally at O";
    return res;
  }
  if (X0.is_zero()) {
    s.kind = SideKind::Focus;
    s.a = numeric(f.X.xy_coefficient(1, 0), std::string(side) + " dX/dx(0,0)");
    s.b = numeric(f.X.xy_coefficient(0, 1), std::string(side) + " dX/dy(0,0)");
    s.c = numeric(f.Y.xy_coefficient(1, 0), std::string(side) + " dY/dx(0,0)");
    s.d = numeric(f.Y.xy_coefficient(0, 1), std::string(side) + " dY/dy(0,0)");
    Rational disc = (s.a - s.d) * (s.a - s.d) + s.b * s.c * 4;
    if (disc.sign() >= 0) {
      res.reason = std::string(side) + " linear part has real eigenvalues";
      return res;
    }
    s.alpha = (s.a + s.d) / 2;
    Rational beta = exact_sqrt(-disc / 4);
    if (beta.sign() < 0) throw InputError(std::string("irrational rotation rate on the ") + side +
                                          " side: pre-scale the system so that det - trace^2/4 is a rational square");
    s.beta = s.c.sign() > 0 ? beta : -beta;
    s.counterclockwise = s.c.sign() > 0;
    res.ok = true;
    return res;
  }
  s.kind = SideKind::Tangency;
  s.a0 = X0;
  Poly line = f.Y;
  if (line.ring()) line = line.substitute(line.ring()->y(), Poly(line.ring(), 0));
  auto co = line.xy_coefficients();
  int j = -1;
  for (const auto& [key, c] : co) {
    if (c.is_zero()) continue;
    // coefficients are ordered by (i, 0); the first nonzero must be numeric
    numeric(c, std::string(side) + " coefficient of x^" + std::to_string(key.first) + " in Y(x,0)");
    j = key.first;
    s.bt = c.constant_value();
    break;
  }
  if (j < 0) {
    res.reason = std::string(side) + " field is tangent to the switching line along it (Y(x,0) = 0)";
    return res;
  }
  if (j % 2 == 0) {
    res.reason = std::string(side) + " tangency has even multiplicity " + std::to_string(j) + " (fold is not invisible on both sides)";
    return res;
  }
  s.ell = (j + 1) / 2;
  int prod = s.a0.sign() * s.bt.sign();
  bool invisible = upper ? prod < 0 : prod > 0;
  if (!invisible) {
    res.reason = std::string(side) + " tangency is visible";
    return res;
  }
  s.counterclockwise = upper ? s.a0.sign() < 0 : s.a0.sign() > 0;
  res.ok = true;
  return res;
}

}  // namespace

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::FF: return "FF";
    case BoundaryKind::FP: return "FP";
    case BoundaryKind::PP: return "PP";
    case BoundaryKind::NotMonodromic: return "NotMonodromic";
  }
  return "?";
}

PiecewiseSystem make_system(const Ring& ring, const std::string& Xu, const std::string& Yu, const std::string& Xl,
                            const std::string& Yl) {
  PiecewiseSystem s;
  s.ring = ring;
  s.upper = {parse_poly(Xu, ring), parse_poly(Yu, ring)};
  s.lower = {parse_poly(Xl, ring), parse_poly(Yl, ring)};
  return s;
}

PiecewiseSystem parse_system(const std::string& toml_text, const Substitutions& sets) {
  toml::table tbl;
  try {
    tbl = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML error at line " << e.source().begin.line << ", column " << e.source().begin.column << ": "
       << e.description();
    throw ParseError(os.str(), 0, e.source().begin.column);
  }
  std::vector<std::string> names;
  if (auto arr = tbl["params"]["names"].as_array()) {
    for (const auto& n : *arr) {
      auto v = n.value<std::string>();
      if (!v) throw InputError("[params] names must be strings");
      names.push_back(*v);
    }
  } else if (tbl["params"]) {
    throw InputError("[params] names must be an array");
  }
  std::map<std::string, std::string> set_map;
  for (const auto& [k, v] : sets) {
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw InputError("--set refers to undeclared parameter '" + k + "'");
    set_map[k] = v;
  }
  std::vector<std::string> kept;
  for (const auto& n : names)
    if (!set_map.count(n)) kept.push_back(n);
  Ring ring = make_ring(kept);
  std::map<std::string, Poly> bound;
  for (const auto& [k, v] : set_map) {
    Poly val = parse_poly(v, ring);
    if (val.involves_xy()) throw InputError("--set " + k + " must not involve x or y");
    bound[k] = val;
  }
  PiecewiseSystem s;
  s.ring = ring;
  auto field = [&](const char* sec) {
    Field f;
    try {
      f.X = parse_poly(require_string(tbl, sec, "X"), ring, bound);
      f.Y = parse_poly(require_string(tbl, sec, "Y"), ring, bound);
    } catch (const ParseError& e) {
      throw ParseError(std::string("[") + sec + "] " + e.what(), e.token, e.column);
    }
    return f;
  };
  s.upper = field("upper");
  s.lower = field("lower");
  return s;
}

PiecewiseSystem load_system(const std::string& path, const Substitutions& sets) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str(), sets);
}

Field mirror_x(const Field& f) {
  const Ring& r = f.X.ring() ? f.X.ring() : f.Y.ring();
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y());
  return {-subst_xy(f.X, -x, y), subst_xy(f.Y, -x, y)};
}

Field rotate_half_turn(const Field& f) {
  const Ring& r = f.X.ring() ? f.X.ring() : f.Y.ring();
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y());
  return {-subst_xy(f.X, -x, -y), -subst_xy(f.Y, -x, -y)};
}

Field reflect_reverse(const Field& f) {
  const Ring& r = f.X.ring() ? f.X.ring() : f.Y.ring();
  Poly x = Poly::var(r, r->x()), y = Poly::var(r, r->y());
  return {-subst_xy(f.X, x, -y), subst_xy(f.Y, x, -y)};
}

Field time_scaled(const Field& f, const Rational& c) { return {f.X.scaled(c), f.Y.scaled(c)}; }

BoundaryClass classify(const PiecewiseSystem& input) {
  BoundaryClass out;
  PiecewiseSystem sys = input;
  SideResult up = analyze_side(sys.upper, true), lo = analyze_side(sys.lower, false);
  auto reject = [&](const std::string& why) {
    out.kind = BoundaryKind::NotMonodromic;
    out.reason = why;
    out.normalized = sys;
    return out;
  };
  if (!up.ok) return reject(up.reason);
  if (!lo.ok) return reject(lo.reason);
  if (up.info.counterclockwise != lo.info.counterclockwise)
    return reject("the two subsystems turn in opposite senses");
  if (!up.info.counterclockwise) {
    // A mirror reverses orientation; it is the only flip that can fix the sense.
    sys.upper = mirror_x(sys.upper);
    sys.lower = mirror_x(sys.lower);
    sys.orientation_record.push_back("(x,y,t)->(-x,y,t): both subsystems turned clockwise");
    up = analyze_side(sys.upper, true);
    lo = analyze_side(sys.lower, false);
  }
  if (up.info.kind == SideKind::Tangency && lo.info.kind == SideKind::Focus) {
    Field nu = rotate_half_turn(sys.lower), nl = rotate_half_turn(sys.upper);
    sys.upper = nu;
    sys.lower = nl;
    sys.orientation_record.push_back("(x,y,t)->(-x,-y,t): focus moved to the upper half plane (PF -> FP)");
    up = analyze_side(sys.upper, true);
    lo = analyze_side(sys.lower, false);
  }
  if (!up.ok || !lo.ok || !up.info.counterclockwise || !lo.info.counterclockwise)
    throw Error("orientation normalization failed");
  out.upper = up.info;
  out.lower = lo.info;
  out.normalized = sys;
  const SideInfo &u = up.info, &l = lo.info;
  if (u.kind == SideKind::Focus && l.kind == SideKind::Focus) {
    if ((u.beta * l.beta).sign() <= 0) return reject("rotation rates have opposite signs");
    out.kind = BoundaryKind::FF;
  } else if (u.kind == SideKind::Focus) {
    if ((u.beta * l.a0).sign() <= 0) return reject("focus and tangency turn in opposite senses");
    out.kind = BoundaryKind::FP;
  } else {
    if ((u.a0 * l.a0).sign() >= 0) return reject("tangencies turn in opposite senses");
    out.kind = BoundaryKind::PP;
  }
  return out;
}

ConsistencyReport homeomorphism_consistency_check(const BoundaryMap& upper, const BoundaryMap& lower) {
  ConsistencyReport rep;
  if ((upper.q1 * lower.q1).sign() <= 0) {
    rep.ok = false;
    rep.reasons.push_back("q1+ * q1- = " + (upper.q1 * lower.q1).str() + " is not positive");
  }
  std::size_t n = std::max(upper.r.size(), lower.r.size());
  for (std::size_t k = 2; k < n; ++k) {
    Poly a = k < upper.r.size() ? upper.r[k] : Poly(0);
    Poly b = k < lower.r.size() ? lower.r[k] : Poly(0);
    if (!(a - b).is_zero()) {
      rep.ok = false;
      if (!rep.first_mismatch) rep.first_mismatch = static_cast<int>(k);
      rep.reasons.push_back("boundary coefficient r_" + std::to_string(k) + ",0 differs: " + a.str() + " vs " + b.str());
    }
  }
  for (const auto* m : {&upper, &lower})
    for (std::size_t k = 0; k < m->s.size(); ++k)
      if (!m->s[k].is_zero()) {
        rep.ok = false;
        rep.reasons.push_back(std::string(m == &upper ? "upper" : "lower") + " map moves the switching line (x^" +
                              std::to_string(k) + " term in the second component)");
      }
  return rep;
}

}  // namespace pwsnf
