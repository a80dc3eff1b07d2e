#include "pwsnf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

namespace pwsnf {

namespace {

struct Mono {
  Real c;
  int i, j;
};

struct NumField {
  std::vector<Mono> X, Y;
  int dx = 1, dy = 1;
};

NumField numeric_field(const Field& f, mpfr_prec_t prec) {
  NumField nf;
  auto conv = [&](const Poly& p, std::vector<Mono>& out) {
    for (const auto& [ij, c] : p.xy_coefficients()) {
      if (!c.is_constant()) throw InputError("the oracle needs a fully numeric system; coefficient " + c.str());
      out.push_back({Real(c.constant_value(), prec), ij.first, ij.second});
      nf.dx = std::max(nf.dx, ij.first);
      nf.dy = std::max(nf.dy, ij.second);
    }
  };
  conv(f.X, nf.X);
  conv(f.Y, nf.Y);
  return nf;
}

// Taylor coefficients of the solution through (x, y) for a polynomial field.
class Taylor {
 public:
  Taylor(const NumField& f, int order, mpfr_prec_t prec)
      : f_(f), p_(order), prec_(prec), xs_(order + 1, Real(prec)), ys_(order + 1, Real(prec)), tmp_(prec), acc_(prec) {
    xp_.assign(f.dx + 1, std::vector<Real>(order + 1, Real(prec)));
    yp_.assign(f.dy + 1, std::vector<Real>(order + 1, Real(prec)));
  }

  void expand(const Real& x, const Real& y) {
    mpfr_set(xs_[0].raw(), x.raw(), MPFR_RNDN);
    mpfr_set(ys_[0].raw(), y.raw(), MPFR_RNDN);
    for (int n = 0; n < p_; ++n) {
      update_powers(xp_, xs_, n);
      update_powers(yp_, ys_, n);
      eval(f_.X, n, xs_[n + 1]);
      eval(f_.Y, n, ys_[n + 1]);
      mpfr_div_ui(xs_[n + 1].raw(), xs_[n + 1].raw(), static_cast<unsigned long>(n + 1), MPFR_RNDN);
      mpfr_div_ui(ys_[n + 1].raw(), ys_[n + 1].raw(), static_cast<unsigned long>(n + 1), MPFR_RNDN);
    }
  }

  const std::vector<Real>& xs() const { return xs_; }
  const std::vector<Real>& ys() const { return ys_; }

  static Real horner(const std::vector<Real>& c, const Real& s) {
    Real r(c.back());
    for (int n = static_cast<int>(c.size()) - 2; n >= 0; --n) {
      mpfr_mul(r.raw(), r.raw(), s.raw(), MPFR_RNDN);
      mpfr_add(r.raw(), r.raw(), c[n].raw(), MPFR_RNDN);
    }
    return r;
  }

 private:
  void update_powers(std::vector<std::vector<Real>>& pw, const std::vector<Real>& s, int n) {
    mpfr_set_ui(pw[0][n].raw(), n == 0 ? 1 : 0, MPFR_RNDN);
    if (pw.size() > 1) mpfr_set(pw[1][n].raw(), s[n].raw(), MPFR_RNDN);
    for (std::size_t i = 2; i < pw.size(); ++i) {
      mpfr_set_zero(acc_.raw(), 1);
      for (int m = 0; m <= n; ++m) {
        mpfr_mul(tmp_.raw(), pw[i - 1][m].raw(), s[n - m].raw(), MPFR_RNDN);
        mpfr_add(acc_.raw(), acc_.raw(), tmp_.raw(), MPFR_RNDN);
      }
      mpfr_set(pw[i][n].raw(), acc_.raw(), MPFR_RNDN);
    }
  }

  void eval(const std::vector<Mono>& monos, int n, Real& out) {
    mpfr_set_zero(out.raw(), 1);
    for (const auto& mo : monos) {
      mpfr_set_zero(acc_.raw(), 1);
      for (int m = 0; m <= n; ++m) {
        mpfr_mul(tmp_.raw(), xp_[mo.i][m].raw(), yp_[mo.j][n - m].raw(), MPFR_RNDN);
        mpfr_add(acc_.raw(), acc_.raw(), tmp_.raw(), MPFR_RNDN);
      }
      mpfr_mul(acc_.raw(), acc_.raw(), mo.c.raw(), MPFR_RNDN);
      mpfr_add(out.raw(), out.raw(), acc_.raw(), MPFR_RNDN);
    }
  }

  const NumField& f_;
  int p_;
  mpfr_prec_t prec_;
  std::vector<Real> xs_, ys_;
  std::vector<std::vector<Real>> xp_, yp_;
  Real tmp_, acc_;
};

Real two_pow(long e, mpfr_prec_t prec) {
  Real r(1.0, prec);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

Real sup_norm(const Real& a, const Real& b) { return max(abs(a), abs(b)); }

// Root of y(s) in (lo, hi] with y(lo) > 0 >= y(hi), by bisection to full precision.
Real locate(const std::vector<Real>& ys, Real lo, Real hi, mpfr_prec_t prec) {
  for (int it = 0; it < static_cast<int>(prec) + 8; ++it) {
    Real mid = (lo + hi) * 0.5;
    if (mid == lo || mid == hi) break;
    if (Taylor::horner(ys, mid).sign() > 0) lo = mid;
    else hi = mid;
  }
  return hi;
}

}  // namespace

OrbitResult half_return_field(const Field& f, const Real& x0, const OracleOptions& opt) {
  const mpfr_prec_t prec = opt.precision_bits;
  if (prec < 64) throw InputError("oracle precision must be at least 64 bits");
  if (opt.taylor_order < 4) throw InputError("Taylor order must be at least 4");
  NumField nf = numeric_field(f, prec);
  const Real radius(opt.radius, prec);
  Real x(x0), y(prec);
  mpfr_set_prec(x.raw(), prec);
  mpfr_set(x.raw(), x0.raw(), MPFR_RNDN);
  if (abs(x) >= radius) throw EscapeError("start point " + x.str(6) + " lies outside the neighbourhood of radius " +
                                          std::to_string(opt.radius));
  const Real scale = abs(x);
  const Real tol = scale * two_pow(-(prec - 12), prec);
  Taylor tay(nf, opt.taylor_order, prec);
  OrbitResult res{Real(prec), 0, Real(prec), Real(prec)};
  const int p = opt.taylor_order;
  bool first = true;
  const int samples = 8;
  while (true) {
    if (res.steps >= opt.max_steps)
      throw ResourceError("integration step budget of " + std::to_string(opt.max_steps) + " exhausted");
    ++res.steps;
    tay.expand(x, y);
    const auto& xs = tay.xs();
    const auto& ys = tay.ys();
    Real speed = sup_norm(xs[1], ys[1]);
    if (speed.sign() == 0) throw InputError("orbit starts at an equilibrium");
    Real r = max(sup_norm(x, y), scale * 0.01);
    Real h = r / speed * 0.1;
    for (int n : {p - 1, p}) {
      Real cn = sup_norm(xs[n], ys[n]);
      if (cn.sign() == 0) continue;
      Real hn = exp(log(tol / cn) * (1.0 / n));
      h = std::min(h, hn, [](const Real& a, const Real& b) { return a < b; });
    }
    if (first) {
      if (ys[1].sign() < 0 || (ys[1].sign() == 0 && ys[2].sign() <= 0))
        throw InputError("orbit from x0 does not enter the upper half plane");
      int guard = 0;
      while (Taylor::horner(ys, h * (1.0 / samples)).sign() <= 0) {
        h = h * 0.5;
        if (++guard > 200) throw Error("cannot leave the switching line");
      }
    }
    // scan the step for the first crossing to y <= 0
    Real prev_s(prec), hit_lo(prec), hit_hi(prec);
    bool hit = false;
    for (int i = 1; i <= samples; ++i) {
      Real s = h * (static_cast<double>(i) / samples);
      if (Taylor::horner(ys, s).sign() <= 0) {
        hit = true;
        hit_lo = prev_s;
        hit_hi = s;
        break;
      }
      prev_s = s;
    }
    Real err = sup_norm(xs[p], ys[p]) * pow(h, p);
    res.error_estimate = res.error_estimate + err;
    if (hit) {
      Real s = locate(ys, hit_lo, hit_hi, prec);
      res.exit_x = Taylor::horner(xs, s);
      res.residual = abs(Taylor::horner(ys, s));
      return res;
    }
    x = Taylor::horner(xs, h);
    y = Taylor::horner(ys, h);
    first = false;
    if (sup_norm(x, y) > radius)
      throw EscapeError("orbit escaped the neighbourhood of radius " + std::to_string(opt.radius) +
                        " (not monodromic here, or x0 too large)");
  }
}

OrbitResult half_return(const PiecewiseSystem& sys, const Real& x0, Side side, const OracleOptions& opt) {
  return half_return_field(side == Side::Upper ? sys.upper : reflect_reverse(sys.lower), x0, opt);
}

DisplacementFit fit_displacement(const PiecewiseSystem& sys, const GridSpec& grid, const OracleOptions& opt) {
  if (grid.count < 8) throw InputError("grid needs at least 8 points");
  if (!(grid.rho > 0 && grid.rho < 1)) throw InputError("grid ratio must lie in (0, 1)");
  if (!(grid.xmax > 0)) throw InputError("grid x_max must be positive");
  BoundaryClass cls = classify(sys);
  if (cls.kind == BoundaryKind::NotMonodromic) throw InputError("origin is not monodromic: " + cls.reason);
  const PiecewiseSystem& s = cls.normalized;
  const mpfr_prec_t prec = opt.precision_bits;
  const int n = grid.count;
  DisplacementFit fit;
  fit.x.assign(n, Real(prec));
  fit.delta.assign(n, Real(prec));
  fit.noise.assign(n, Real(prec));
  for (int i = 0; i < n; ++i) fit.x[i] = Real(grid.xmax, prec) * pow(Real(grid.rho, prec), i);

  std::vector<std::string> errors(n);
  std::vector<int> kinds(n, 0);  // 1 escape, 2 resource, 3 input, 4 other
  auto work = [&](int i) {
    try {
      OrbitResult up = half_return(s, fit.x[i], Side::Upper, opt);
      OrbitResult lo = half_return(s, fit.x[i], Side::LowerInverse, opt);
      fit.delta[i] = lo.exit_x - up.exit_x;
      fit.noise[i] = (up.error_estimate + lo.error_estimate + up.residual + lo.residual) * 100.0 +
                     fit.x[i] * two_pow(-(prec - 24), prec);
    } catch (const EscapeError& e) {
      kinds[i] = 1, errors[i] = e.what();
    } catch (const ResourceError& e) {
      kinds[i] = 2, errors[i] = e.what();
    } catch (const InputError& e) {
      kinds[i] = 3, errors[i] = e.what();
    } catch (const std::exception& e) {
      kinds[i] = 4, errors[i] = e.what();
    }
  };
  unsigned nt = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (int i = static_cast<int>(t); i < n; i += static_cast<int>(nt)) work(i);
    });
  for (auto& th : pool) th.join();
  for (int i = 0; i < n; ++i) {
    switch (kinds[i]) {
      case 1:
        throw EscapeError(errors[i]);
      case 2:
        throw ResourceError(errors[i]);
      case 3:
        throw InputError(errors[i]);
      case 4:
        throw Error(errors[i]);
      default:
        break;
    }
  }

  int above = 0;
  for (int i = 0; i < n; ++i)
    if (abs(fit.delta[i]) > fit.noise[i]) ++above;
  if (above == 0) {
    fit.center_consistent = true;
    return fit;
  }
  if (above < n) throw OrderAmbiguous("order ambiguous: displacement is below the noise floor at part of the grid; "
                                      "refine grid or raise precision");
  // least-squares slope of log|Delta| against log x
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    double lx = log(fit.x[i]).to_double(), ly = log(abs(fit.delta[i])).to_double();
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const int m = static_cast<int>(std::lround(fit.slope));
  if (m < 1 || std::abs(fit.slope - m) > 0.1) {
    std::ostringstream os;
    os << "order ambiguous: log-log slope " << fit.slope << "; refine grid or raise precision";
    throw OrderAmbiguous(os.str());
  }
  fit.order = m;
  // Neville extrapolation of Delta/x^m to x = 0 on the smallest points
  const int d = std::min(4, n - 1);
  std::vector<Real> xx, q;
  for (int i = n - 1 - d; i < n; ++i) {
    xx.push_back(fit.x[i]);
    q.push_back(fit.delta[i] / pow(fit.x[i], m));
  }
  std::vector<Real> t = q;
  Real best(prec), second(prec);
  for (int level = 1; level <= d; ++level) {
    for (int i = 0; i + level <= d; ++i) {
      // P_{i..i+level}(0)
      t[i] = (t[i + 1] * xx[i] - t[i] * xx[i + level]) / (xx[i] - xx[i + level]);
    }
    if (level == d - 1) second = t[0];
  }
  best = t[0];
  fit.coefficient = best;
  fit.uncertainty = abs(best - second);
  return fit;
}

std::string DisplacementFit::str() const {
  std::ostringstream os;
  if (center_consistent) {
    os << "center-consistent: |Delta| below the noise floor at all " << x.size() << " grid points";
    return os.str();
  }
  os << "m=" << order << ", V=" << std::setprecision(6) << coefficient.to_double()
     << " +- " << std::setprecision(2) << uncertainty.to_double() << ", slope=" << std::setprecision(4) << slope;
  return os.str();
}

void write_csv(std::ostream& os, const DisplacementFit& fit) {
  os << "x,delta,noise\n";
  for (std::size_t i = 0; i < fit.x.size(); ++i)
    os << fit.x[i].str(30) << "," << fit.delta[i].str(30) << "," << fit.noise[i].str(6) << "\n";
}

OracleVerdict compare_with_symbolic(const DisplacementFit& fit, const Analysis& a, double rel_tol) {
  OracleVerdict v;
  FocusOrder o = focus_order(a.seq);
  std::ostringstream os;
  if (o.kind == FocusOrder::Kind::ParameterDependent) throw InputError("symbolic parameters remain; use --set");
  if (o.kind == FocusOrder::Kind::CenterUpToOrder) {
    v.center = fit.center_consistent;
    v.ok = fit.center_consistent;
    os << "symbolic: center up to order " << a.N << "; numeric: " << fit.str()
       << "; verdict=" << (v.ok ? "OK" : "MISMATCH");
    v.text = os.str();
    return v;
  }
  const int k = o.index;
  v.symbolic_order = k;
  const auto& e = a.seq.at(k);
  const Rational L = e.reduced.constant_value();
  const mpfr_prec_t prec = 128;
  Real val(prec);
  const Real pi = Real::pi(prec);
  if (e.factor.kind == FactorKind::ExpDifferenceFF) {
    Rational gp = a.gamma_plus[1].constant_value(), gm = a.gamma_minus[1].constant_value();
    val = exp(Real(gp, prec) * pi) - exp(-Real(gm, prec) * pi);
  } else if (e.factor.kind == FactorKind::ExpDifferenceFP) {
    val = exp(Real(a.gamma_plus[1].constant_value(), prec) * pi) - Real(1.0, prec);
  } else {
    // the integral constant is the one realised by the return map
    ExtScalar c = e.factor.kind == FactorKind::FF ? c_hat(k, e.factor.gamma1) : e.factor.value();
    val = Real(L, prec) * Real(ext_eval(c, 30).mid(), prec);
  }
  v.symbolic_value = val.to_double();
  if (fit.center_consistent) {
    v.ok = false;
    os << "symbolic: first nonzero V_" << k << " = " << v.symbolic_value << "; numeric: " << fit.str()
       << "; verdict=MISMATCH";
    v.text = os.str();
    return v;
  }
  double vh = fit.coefficient.to_double();
  bool same_order = fit.order == k;
  bool close = std::abs(vh - v.symbolic_value) <= rel_tol * std::abs(v.symbolic_value) + 3 * fit.uncertainty.to_double();
  v.ok = same_order && close;
  os << "m=" << fit.order << ", V=" << std::setprecision(6) << vh << ", symbolic V_" << k << "="
     << (e.factor.kind == FactorKind::PP || e.factor.kind == FactorKind::FP ? "" : "") << v.symbolic_value
     << ", verdict=" << (v.ok ? "OK" : "MISMATCH");
  v.text = os.str();
  return v;
}

}  // namespace pwsnf
