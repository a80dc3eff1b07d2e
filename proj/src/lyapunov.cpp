#include "pwsnf/lyapunov.hpp"

#include <algorithm>
#include <sstream>

#include "pwsnf/bell.hpp"
#include "pwsnf/errors.hpp"

namespace pwsnf {

namespace {

Poly at(const std::vector<Poly>& v, std::size_t k) { return k < v.size() ? v[k] : Poly(0); }

Rational dfact(int n) {
  Rational r(1);
  for (int i = n; i > 1; i -= 2) r = r * Rational(i);
  return r;
}

Rational constant_of(const Poly& p, const char* what) {
  if (!p.is_constant()) throw InputError(std::string(what) + " must be numeric, got " + p.str());
  return p.constant_value();
}

ExtSum<Poly> lift(const ExtScalar& s, const Rational& g) {
  ExtSum<Poly> r(g);
  for (const auto& [key, c] : s.terms()) r.add_term(Poly(c), key.first, key.second);
  return r;
}

ExtSum<Poly> reduce_ext(const ExtSum<Poly>& s, const std::vector<Poly>& basis) {
  if (basis.empty()) return s;
  return s.map_coefficients([&](const Poly& c) { return divide_remainder(c, basis); });
}

void reduce_entries(LyapunovSequence& s, const GroebnerOptions& opt) {
  std::vector<Poly> gens, basis;
  bool canonical = true;
  for (auto& e : s.entries) {
    e.prior_basis = basis;
    e.canonical = canonical;
    e.reduced = basis.empty() ? e.L : divide_remainder(e.L, basis);
    if (e.reduced.is_zero()) continue;
    gens.push_back(e.reduced);
    try {
      basis = groebner_basis(gens, opt);
      canonical = true;
    } catch (const ResourceError&) {
      basis = gens;
      canonical = false;
    }
  }
}

LyapunovSequence make_sequence(BoundaryKind type, int N) {
  if (N < 1) throw InputError("order N must be at least 1");
  LyapunovSequence s;
  s.type = type;
  s.N = N;
  s.entries.resize(static_cast<std::size_t>(N) + 1);
  for (int k = 1; k <= N + 1; ++k) s.entries[k - 1].k = k;
  return s;
}

TrigExpPoly sin_power(int n) {
  TrigExpPoly s = TrigExpPoly::sin(1), out(1);
  for (int i = 0; i < n; ++i) out = out * s;
  return out;
}

std::string half(int twice) { return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2"; }

CrosscheckEntry compare(int k, const ExtSum<Poly>& vret, const Poly& L, const ExtScalar& printed,
                        const std::optional<ExtScalar>& hat, const std::vector<Poly>& basis) {
  CrosscheckEntry e;
  e.k = k;
  const Rational g = printed.gamma1();
  ExtSum<Poly> d1 = reduce_ext(vret - lift(printed, g) * L, basis);
  bool differ = hat && !(*hat == printed);
  if (d1.is_zero()) {
    e.status = CrossStatus::Agree;
    if (differ)
      e.detail = "closed constant " + printed.str() + " differs from the integral " + hat->str() +
                 " (not distinguished here since L_k vanishes modulo the prior constants)";
    return e;
  }
  if (differ) {
    ExtSum<Poly> d2 = reduce_ext(vret - lift(*hat, g) * L, basis);
    if (d2.is_zero()) {
      e.status = CrossStatus::FactorDiscrepancy;
      e.detail = "return map equals L_k * " + hat->str() + ", not L_k * " + printed.str();
      return e;
    }
  }
  e.status = CrossStatus::Mismatch;
  e.detail = "residual " + d1.str();
  return e;
}

CrosscheckEntry skipped(int k, std::string why) { return {k, CrossStatus::Skipped, std::move(why)}; }

// Return-map coefficients with abstract symbols g2..g{N+1}.
struct AbstractFF {
  Ring ring;
  ReturnMapFF map;
};

AbstractFF abstract_ff(const Rational& gamma1, int N) {
  std::vector<std::string> names;
  for (int k = 2; k <= N + 1; ++k) names.push_back("g" + std::to_string(k));
  AbstractFF a;
  a.ring = make_ring(names, false);
  std::vector<Poly> gam(N + 2, Poly(0));
  gam[1] = Poly(gamma1);
  for (int k = 2; k <= N + 1; ++k) gam[k] = Poly::var(a.ring, "g" + std::to_string(k));
  a.map = upper_return_map_ff(gam, N);
  return a;
}

ExtSum<Poly> substitute_ext(const ExtSum<Poly>& s, const Ring& from, const Ring& target, const std::vector<Poly>& vals,
                            const std::string& prefix) {
  std::map<std::size_t, Poly> m;
  for (std::size_t i = 0; i < from->num_params(); ++i) {
    int k = std::stoi(from->name(i).substr(prefix.size()));
    m[i] = at(vals, k);
  }
  return s.map_coefficients([&](const Poly& c) { return c.transfer(target, m); });
}

}  // namespace

std::string FactorTag::str() const {
  switch (kind) {
    case FactorKind::ExpDifferenceFF:
      return "exp(gamma1+ pi) - exp(-gamma1- pi)";
    case FactorKind::ExpDifferenceFP:
      return "exp(gamma1+ pi) - 1";
    case FactorKind::FF:
      return "C^FF_" + std::to_string(k) + "(gamma1=" + gamma1.str() + ") = " + c_ff(k, gamma1).str();
    case FactorKind::FP:
      return "C^FP_" + std::to_string(k) + " = " + c_fp(k).str();
    case FactorKind::PP:
      return "C^PP_" + std::to_string(k) + "(l=" + std::to_string(ell) + ") = " + Rational(2, k + 2 * ell - 1).str();
  }
  return "";
}

ExtScalar FactorTag::value() const {
  switch (kind) {
    case FactorKind::FF:
      return c_ff(k, gamma1);
    case FactorKind::FP:
      return c_fp(k);
    case FactorKind::PP:
      return ExtScalar(Rational(0), Rational(2, k + 2 * ell - 1));
    default:
      throw Error("the k = 1 exponential difference is not a multiplicative factor");
  }
}

ExtScalar c_ff(int k, const Rational& g) {
  if (k < 2) throw InputError("C^FF_k needs k >= 2");
  Rational s = Rational(1) + g * g;
  ExtScalar out(g);
  if (k % 2 == 0) {
    Rational c = dfact(k - 2) / (dfact(k - 1) * s.pow(k / 2));
    out.add_term(c, 0, 1);
    out.add_term(c, 0, 2);
  } else {
    out.add_term(dfact(k - 2) / (dfact(k - 1) * s.pow((k - 1) / 2)), 1, 1);
  }
  return out;
}

ExtScalar c_fp(int k) {
  if (k < 2) throw InputError("C^FP_k needs k >= 2");
  Rational c = dfact(k - 2) / dfact(k - 1);
  return k % 2 == 0 ? ExtScalar(Rational(0), c * Rational(2)) : ExtScalar(Rational(0), c, 1, 0);
}

ExtScalar c_hat(int k, const Rational& g) {
  if (k < 2) throw InputError("the integral constant needs k >= 2");
  TrigExpPoly f = sin_power(k - 1) * TrigExpPoly::exp(g * Rational(k - 1));
  ExtSum<Poly> v = te_eval_at_pi(f.antiderivative(), g);
  ExtScalar out(g);
  for (const auto& [key, c] : v.terms()) out.add_term(c.constant_value(), key.first, key.second + 1);
  return out;
}

Enclosure factor_enclosure(const FactorTag& f, int digits) { return ext_eval(f.value(), digits); }

LyapunovSequence lyapunov_ff(const std::vector<Poly>& gp, const std::vector<Poly>& gm, int N,
                             const GroebnerOptions& opt) {
  LyapunovSequence s = make_sequence(BoundaryKind::FF, N);
  Rational g1 = constant_of(at(gp, 1), "gamma1+");
  for (auto& e : s.entries) {
    const int k = e.k;
    e.L = k == 1 ? at(gp, 1) + at(gm, 1) : (k % 2 ? at(gp, k) + at(gm, k) : at(gp, k) - at(gm, k));
    e.factor = {k == 1 ? FactorKind::ExpDifferenceFF : FactorKind::FF, k, g1, 0};
  }
  reduce_entries(s, opt);
  return s;
}

LyapunovSequence lyapunov_fp(const std::vector<Poly>& gp, int N, const GroebnerOptions& opt) {
  LyapunovSequence s = make_sequence(BoundaryKind::FP, N);
  Rational g1 = constant_of(at(gp, 1), "gamma1+");
  for (auto& e : s.entries) {
    e.L = at(gp, e.k);
    e.factor = {e.k == 1 ? FactorKind::ExpDifferenceFP : FactorKind::FP, e.k, g1, 0};
  }
  reduce_entries(s, opt);
  return s;
}

LyapunovSequence lyapunov_pp(const std::vector<Poly>& sigma, int ell, int N, const GroebnerOptions& opt) {
  LyapunovSequence s = make_sequence(BoundaryKind::PP, N);
  for (auto& e : s.entries) {
    e.L = e.k % 2 ? Poly(0) : at(sigma, e.k);
    e.factor = {FactorKind::PP, e.k, Rational(0), ell};
  }
  reduce_entries(s, opt);
  return s;
}

std::string FocusOrder::str() const {
  switch (kind) {
    case Kind::Value:
      return half(twice);
    case Kind::CenterUpToOrder:
      return "center up to order " + std::to_string(N);
    case Kind::ParameterDependent: {
      std::string out = "parameter dependent:";
      for (const auto& c : conditions) out += " " + c + ";";
      return out;
    }
  }
  return "";
}

FocusOrder focus_order(const LyapunovSequence& seq) {
  FocusOrder o;
  o.N = seq.N;
  for (const auto& e : seq.entries) {
    if (e.reduced.is_zero()) continue;
    o.index = e.k;
    if (e.reduced.is_constant()) {
      o.kind = FocusOrder::Kind::Value;
      o.twice = e.k - 1;
      o.sign = e.reduced.constant_value().sign();
    } else {
      o.kind = FocusOrder::Kind::ParameterDependent;
      o.conditions.push_back("order " + half(e.k - 1) + " iff " + e.reduced.str() + " != 0");
      o.conditions.push_back("V_1..V_" + std::to_string(e.k - 1) + " vanish identically");
    }
    return o;
  }
  o.kind = FocusOrder::Kind::CenterUpToOrder;
  return o;
}

bool OrderSet::contains(int twice) const {
  if (std::find(finite.begin(), finite.end(), twice) != finite.end()) return true;
  if (tail_from >= 0 && twice >= tail_from) return true;
  return all_odd && twice % 2 != 0;
}

bool OrderSet::admits_center_up_to(int N) const {
  if (center || all_odd || tail_from >= 0) return true;
  return std::any_of(finite.begin(), finite.end(), [&](int t) { return t >= N + 1; });
}

bool OrderSet::contains(const FocusOrder& o) const {
  switch (o.kind) {
    case FocusOrder::Kind::Value:
      return contains(o.twice);
    case FocusOrder::Kind::CenterUpToOrder:
      return admits_center_up_to(o.N);
    default:
      return false;
  }
}

std::string OrderSet::str() const {
  std::ostringstream os;
  os << "(" << label << ") {";
  bool first = true;
  auto put = [&](const std::string& s) {
    os << (first ? "" : ", ") << s;
    first = false;
  };
  for (int t : finite) put(half(t));
  if (all_odd) put("all (2i+1)/2");
  if (tail_from >= 0) put("all i/2 with i >= " + std::to_string(tail_from));
  if (center) put("infinity");
  os << "}";
  return os.str();
}

OrderSet possible_orders(BoundaryKind type, std::optional<int> sp, std::optional<int> sm) {
  if (type == BoundaryKind::PP) throw InputError("no order constraint is available for PP type");
  if (type == BoundaryKind::NotMonodromic) throw InputError("not a monodromic singular point");
  for (auto v : {sp, sm})
    if (v && *v < 0) throw InputError("subsystem orders must be non-negative");
  OrderSet s;
  auto odd_halves_to = [&](int m) {
    for (int i = 0; i < m; ++i) s.finite.push_back(2 * i + 1);
  };
  if (type == BoundaryKind::FP) {
    if (sp && *sp == 0) {
      s.label = "d";
      s.finite = {0};
    } else if (sp) {
      s.label = "e";
      odd_halves_to(*sp);
      s.finite.push_back(2 * *sp);
    } else {
      s.label = "e";
      s.all_odd = true;
      s.center = true;
    }
    return s;
  }
  const bool zp = sp && *sp == 0, zm = sm && *sm == 0;
  if (zp && zm) {
    s.label = "any";
    s.tail_from = 0;
    s.center = true;
  } else if (zp || zm) {
    s.label = "a";
    s.finite = {0};
  } else if (sp != sm) {
    s.label = "b";
    int m = !sp ? *sm : (!sm ? *sp : std::min(*sp, *sm));
    odd_halves_to(m);
    s.finite.push_back(2 * m);
  } else if (sp) {
    s.label = "c";
    odd_halves_to(*sp);
    s.tail_from = 2 * *sp;
    s.center = true;
  } else {
    s.label = "c";
    s.all_odd = true;
    s.center = true;
  }
  return s;
}

TruncationCenter center_truncation_check(BoundaryKind type, const std::vector<Poly>& a, const std::vector<Poly>& b,
                                         int N) {
  TruncationCenter out;
  for (int k = 1; k <= N + 1; ++k) {
    Poly v;
    switch (type) {
      case BoundaryKind::FF:
        v = k % 2 ? at(a, k) + at(b, k) : at(a, k) - at(b, k);
        break;
      case BoundaryKind::FP:
        v = at(a, k);
        break;
      case BoundaryKind::PP:
        v = k % 2 ? Poly(0) : at(a, k);
        break;
      default:
        throw InputError("not a monodromic type");
    }
    if (!v.is_zero()) {
      out.center = false;
      out.witness = k;
      return out;
    }
  }
  return out;
}

ReturnMapFF upper_return_map_ff(const std::vector<Poly>& gamma, int N) {
  ReturnMapFF m;
  m.N = N;
  m.gamma1 = constant_of(at(gamma, 1), "gamma1");
  const Rational g = m.gamma1;
  m.r.assign(N + 2, TrigExpPoly());
  m.u.assign(N + 2, ExtSum<Poly>(g));
  m.r[1] = TrigExpPoly::exp(g);
  m.u[1] = ExtSum<Poly>(g, Poly(1), 0, 1);
  const TrigExpPoly eg = TrigExpPoly::exp(g), emg = TrigExpPoly::exp(-g);
  std::vector<TrigExpPoly> sinp(N + 1);
  for (int i = 0; i <= N; ++i) sinp[i] = sin_power(i);
  for (int j = 2; j <= N + 1; ++j) {
    std::vector<TrigExpPoly> args(m.r.begin() + 1, m.r.begin() + j);
    BellPowers<TrigExpPoly> B(args, j);
    TrigExpPoly integrand;
    for (int i = 2; i <= j; ++i) {
      Poly gi = at(gamma, i);
      if (gi.is_zero()) continue;
      integrand += (sinp[i - 1] * emg * B.at(j, i)).scaled(gi);
    }
    m.r[j] = eg * integrand.antiderivative();
    m.u[j] = te_eval_at_pi(m.r[j], g);
  }
  return m;
}

ReturnMapPP upper_return_map_pp(const std::vector<Poly>& sigma, int ell, int N) {
  if (ell < 1) throw InputError("multiplicity parameter must be positive");
  ReturnMapPP m;
  m.ell = ell;
  m.N = N;
  m.v.assign(N + 2, Poly(0));
  m.v[1] = Poly(1);
  const int L = 2 * ell;
  for (int k = 2; k <= N + 1; ++k) {
    std::vector<Poly> args(m.v.begin() + 1, m.v.begin() + k);  // v_1..v_{k-1}; v_k treated as 0
    const int K = k + L - 1;
    BellPowers<Poly> B(args, K);
    Poly acc = k % 2 ? Poly(0) : at(sigma, k).scaled(Rational(2, K));
    acc -= B.at(K, L).scaled(Rational(1, L));
    for (int i = L + 1; i <= K - 1; ++i) {
      Rational c(i % 2 ? 1 : -1, i);
      acc += (at(sigma, i - L + 1) * B.at(K, i)).scaled(c);
    }
    m.v[k] = acc;
  }
  return m;
}

Analysis analyze(const PiecewiseSystem& sys, int N, const AnalyzeOptions& opt) {
  if (N < 1) throw InputError("order N must be at least 1");
  Analysis a;
  a.N = N;
  a.cls = classify(sys);
  const auto& s = a.cls.normalized;
  switch (a.cls.kind) {
    case BoundaryKind::NotMonodromic:
      throw InputError("origin is not monodromic: " + a.cls.reason);
    case BoundaryKind::FF: {
      a.upper_focus = focus_normal_form(s.upper, N, opt.C);
      a.lower_focus = reduce_lower_focus(s.lower, N, opt.C);
      a.consistency = homeomorphism_consistency_check(a.upper_focus->boundary, a.lower_focus->flipped.boundary);
      a.gamma_plus = a.upper_focus->gamma;
      a.gamma_minus = a.lower_focus->gamma_lower;
      a.seq = lyapunov_ff(a.gamma_plus, a.gamma_minus, N, opt.groebner);
      break;
    }
    case BoundaryKind::FP: {
      a.lower_tangency = lower_tangency_normal_form(s.lower, N);
      a.upper_focus = focus_normal_form(s.upper, N, a.lower_tangency->r0);
      a.consistency = homeomorphism_consistency_check(a.upper_focus->boundary, a.lower_tangency->boundary);
      a.gamma_plus = a.upper_focus->gamma;
      a.seq = lyapunov_fp(a.gamma_plus, N, opt.groebner);
      break;
    }
    case BoundaryKind::PP: {
      a.lower_tangency = lower_tangency_normal_form(s.lower, N);
      a.upper_tangency = tangency_normal_form_coupled(s.upper, N, a.lower_tangency->r0);
      a.consistency = homeomorphism_consistency_check(a.upper_tangency->boundary, a.lower_tangency->boundary);
      a.sigma = a.upper_tangency->sigma;
      a.seq = lyapunov_pp(a.sigma, a.upper_tangency->ell, N, opt.groebner);
      break;
    }
  }
  if (!a.consistency.ok) throw Error("boundary maps of the two sides disagree: " + a.consistency.reasons.front());
  return a;
}

std::optional<int> smooth_focus_order(const Ring& ring, const Field& f, int N) {
  PiecewiseSystem s{ring, f, f, {}};
  Analysis a = analyze(s, N);
  if (a.cls.kind != BoundaryKind::FF) throw InputError("smooth side is not a focus");
  FocusOrder o = focus_order(a.seq);
  if (o.kind == FocusOrder::Kind::CenterUpToOrder) return std::nullopt;
  if (o.kind == FocusOrder::Kind::ParameterDependent) throw InputError("smooth order is parameter dependent");
  if (o.twice % 2) throw Error("smooth focus with a half-integer order " + o.str());
  return o.twice / 2;
}

std::string to_string(CrossStatus s) {
  switch (s) {
    case CrossStatus::Agree:
      return "agree";
    case CrossStatus::FactorDiscrepancy:
      return "factor-discrepancy";
    case CrossStatus::Mismatch:
      return "mismatch";
    case CrossStatus::Skipped:
      return "skipped";
  }
  return "";
}

bool CrosscheckReport::ok() const {
  return std::none_of(entries.begin(), entries.end(), [](const auto& e) { return e.status == CrossStatus::Mismatch; });
}

bool CrosscheckReport::discrepancy() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) {
    return e.status == CrossStatus::FactorDiscrepancy || (!e.detail.empty() && e.status == CrossStatus::Agree);
  });
}

CrosscheckReport crosscheck_return_map(const Analysis& a) {
  CrosscheckReport rep;
  rep.type = a.cls.kind;
  const int N = a.N;
  const Ring& ring = a.cls.normalized.ring;
  const auto& seq = a.seq;
  if (a.cls.kind == BoundaryKind::PP) {
    const int ell = a.upper_tangency->ell;
    std::vector<std::string> names;
    for (int k = 2; k <= N + 1; ++k) names.push_back("s" + std::to_string(k));
    Ring sr = make_ring(names, false);
    std::vector<Poly> sig(N + 2, Poly(0));
    for (int k = 2; k <= N + 1; ++k) sig[k] = Poly::var(sr, "s" + std::to_string(k));
    ReturnMapPP m = upper_return_map_pp(sig, ell, N);
    rep.entries.push_back(m.v[1] == Poly(1) ? CrosscheckEntry{1, CrossStatus::Agree, ""}
                                           : CrosscheckEntry{1, CrossStatus::Mismatch, "v_1 != 1"});
    for (int k = 2; k <= N + 1; ++k) {
      ExtSum<Poly> v = substitute_ext(ExtSum<Poly>(Rational(0), m.v[k]), sr, ring, a.sigma, "s");
      const auto& e = seq.at(k);
      rep.entries.push_back(compare(k, v, e.L, e.factor.value(), std::nullopt, e.prior_basis));
    }
    return rep;
  }
  const Rational gp1 = constant_of(at(a.gamma_plus, 1), "gamma1+");
  const bool ff = a.cls.kind == BoundaryKind::FF;
  const Rational gt1 = ff ? constant_of(at(a.lower_focus->flipped.gamma, 1), "gamma1 (flipped lower)") : Rational(0);
  if (gp1 != gt1) {
    rep.entries.push_back({1, CrossStatus::Agree, "V_1 != 0; sign agrees with L_1 by monotonicity of exp"});
    for (int k = 2; k <= N + 1; ++k) rep.entries.push_back(skipped(k, "V_1 != 0"));
    return rep;
  }
  rep.entries.push_back({1, CrossStatus::Agree, ""});
  AbstractFF ab = abstract_ff(gp1, N);
  for (int k = 2; k <= N + 1; ++k) {
    ExtSum<Poly> v = substitute_ext(ab.map.u[k], ab.ring, ring, a.gamma_plus, "g");
    if (ff) v -= substitute_ext(ab.map.u[k], ab.ring, ring, a.lower_focus->flipped.gamma, "g");
    const auto& e = seq.at(k);
    std::optional<ExtScalar> hat;
    if (ff) hat = c_hat(k, gp1);
    rep.entries.push_back(compare(k, v, e.L, e.factor.value(), hat, e.prior_basis));
  }
  return rep;
}

CrosscheckReport crosscheck_abstract_ff(const Rational& gamma1, int N) {
  CrosscheckReport rep;
  rep.type = BoundaryKind::FF;
  std::vector<std::string> names;
  for (int k = 2; k <= N + 1; ++k) names.push_back("gp" + std::to_string(k));
  for (int k = 2; k <= N + 1; ++k) names.push_back("gt" + std::to_string(k));
  Ring r = make_ring(names, false);
  std::vector<Poly> gp(N + 2, Poly(0)), gt(N + 2, Poly(0));
  for (int k = 2; k <= N + 1; ++k) {
    gp[k] = Poly::var(r, "gp" + std::to_string(k));
    gt[k] = Poly::var(r, "gt" + std::to_string(k));
  }
  AbstractFF ab = abstract_ff(gamma1, N);
  rep.entries.push_back({1, CrossStatus::Agree, ""});
  std::vector<Poly> prior;
  for (int k = 2; k <= N + 1; ++k) {
    ExtSum<Poly> v = substitute_ext(ab.map.u[k], ab.ring, r, gp, "g") - substitute_ext(ab.map.u[k], ab.ring, r, gt, "g");
    Poly L = gp[k] - gt[k];
    std::vector<Poly> basis = prior.empty() ? prior : groebner_basis(prior);
    rep.entries.push_back(compare(k, v, L, c_ff(k, gamma1), c_hat(k, gamma1), basis));
    prior.push_back(L);
  }
  return rep;
}

CrosscheckReport crosscheck_abstract_fp(int N) {
  CrosscheckReport rep;
  rep.type = BoundaryKind::FP;
  AbstractFF ab = abstract_ff(Rational(0), N);
  rep.entries.push_back({1, CrossStatus::Agree, ""});
  std::vector<Poly> prior;
  for (int k = 2; k <= N + 1; ++k) {
    Poly L = Poly::var(ab.ring, "g" + std::to_string(k));
    std::vector<Poly> basis = prior.empty() ? prior : groebner_basis(prior);
    rep.entries.push_back(compare(k, ab.map.u[k], L, c_fp(k), std::nullopt, basis));
    prior.push_back(L);
  }
  return rep;
}

CrosscheckReport crosscheck_abstract_pp(int ell, int N) {
  CrosscheckReport rep;
  rep.type = BoundaryKind::PP;
  std::vector<std::string> names;
  for (int k = 2; k <= N + 1; ++k) names.push_back("s" + std::to_string(k));
  Ring r = make_ring(names, false);
  std::vector<Poly> sig(N + 2, Poly(0));
  for (int k = 2; k <= N + 1; ++k) sig[k] = Poly::var(r, "s" + std::to_string(k));
  ReturnMapPP m = upper_return_map_pp(sig, ell, N);
  rep.entries.push_back({1, m.v[1] == Poly(1) ? CrossStatus::Agree : CrossStatus::Mismatch, ""});
  std::vector<Poly> prior;
  for (int k = 2; k <= N + 1; ++k) {
    Poly L = k % 2 ? Poly(0) : sig[k];
    std::vector<Poly> basis = prior.empty() ? prior : groebner_basis(prior);
    rep.entries.push_back(compare(k, ExtSum<Poly>(Rational(0), m.v[k]), L,
                                  ExtScalar(Rational(0), Rational(2, k + 2 * ell - 1)), std::nullopt, basis));
    if (!L.is_zero()) prior.push_back(L);
  }
  return rep;
}

}  // namespace pwsnf
