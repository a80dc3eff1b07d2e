#include "pwsnf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "pwsnf/errors.hpp"
#include "pwsnf/lyapunov.hpp"

namespace pwsnf {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"classify",        "normal-form", "lyapunov", "order", "center-check",
                                            "possible-orders", "oracle",      "crosscheck"};

Json polys(const std::vector<Poly>& v, int from) {
  Json j = Json::object();
  for (int k = from; k < static_cast<int>(v.size()); ++k) j[std::to_string(k)] = v[k].str();
  return j;
}

std::string poly_list(const std::vector<Poly>& v, int from, const std::string& name) {
  std::ostringstream os;
  for (int k = from; k < static_cast<int>(v.size()); ++k) os << "  " << name << "_" << k << " = " << v[k].str() << "\n";
  return os.str();
}

Json side_json(const SideInfo& s) {
  Json j;
  if (s.kind == SideKind::Focus) {
    j["kind"] = "focus";
    j["alpha"] = s.alpha.str();
    j["beta"] = s.beta.str();
  } else {
    j["kind"] = "tangency";
    j["ell"] = s.ell;
    j["a0"] = s.a0.str();
    j["bt"] = s.bt.str();
  }
  return j;
}

std::string side_text(const SideInfo& s) {
  if (s.kind == SideKind::Focus) return "focus, eigenvalues " + s.alpha.str() + " +- " + s.beta.str() + " i";
  return "invisible tangency, ell = " + std::to_string(s.ell) + ", X(0,0) = " + s.a0.str();
}

// V_k = L_k * C_k rendered exactly (reduced L_k).
std::string render_v(const LyapunovEntry& e, const Analysis& a) {
  if (e.factor.kind == FactorKind::ExpDifferenceFF || e.factor.kind == FactorKind::ExpDifferenceFP) {
    if (!e.reduced.is_zero() && e.reduced.is_constant()) {
      if (e.factor.kind == FactorKind::ExpDifferenceFF)
        return "exp(" + a.gamma_plus[1].str() + "*pi) - exp(" + (-a.gamma_minus[1]).str() + "*pi)";
      return "exp(" + a.gamma_plus[1].str() + "*pi) - 1";
    }
    return e.reduced.is_zero() ? "0" : "sign(" + e.reduced.str() + ") * |exp difference|";
  }
  ExtScalar c = e.factor.value();
  ExtSum<Poly> v(c.gamma1());
  for (const auto& [key, q] : c.terms()) v.add_term(e.reduced.scaled(q), key.first, key.second);
  if (v.terms().size() == 1 && v.terms().begin()->first == std::make_pair(0, 0)) return v.terms().begin()->second.str();
  return v.str();
}

Json order_json(const FocusOrder& o) {
  Json j;
  switch (o.kind) {
    case FocusOrder::Kind::Value:
      j["kind"] = "value";
      j["order"] = o.str();
      j["index"] = o.index;
      j["sign"] = o.sign;
      break;
    case FocusOrder::Kind::CenterUpToOrder:
      j["kind"] = "center-up-to-order";
      j["N"] = o.N;
      break;
    case FocusOrder::Kind::ParameterDependent:
      j["kind"] = "parameter-dependent";
      j["index"] = o.index;
      j["conditions"] = o.conditions;
      break;
  }
  return j;
}

Json header(const RunConfig& cfg, const BoundaryClass& cls) {
  Json j;
  j["command"] = cfg.command;
  j["kind"] = to_string(cls.kind);
  j["N"] = cfg.N;
  j["orientation_record"] = cls.normalized.orientation_record;
  return j;
}

AnalyzeOptions analyze_options(const RunConfig& cfg) {
  AnalyzeOptions opt;
  if (cfg.budget) opt.groebner.step_budget = cfg.budget;
  return opt;
}

OracleOptions oracle_options(const RunConfig& cfg) {
  OracleOptions o;
  o.precision_bits = cfg.precision_bits;
  if (cfg.budget) o.max_steps = cfg.budget;
  o.threads = cfg.threads;
  return o;
}

void emit(const RunConfig& cfg, std::ostream& out, const Json& j, const std::string& text) {
  if (cfg.json) out << j.dump(2) << "\n";
  else out << text;
}

int cmd_classify(const RunConfig& cfg, const PiecewiseSystem& sys, std::ostream& out) {
  BoundaryClass cls = classify(sys);
  Json j;
  j["kind"] = to_string(cls.kind);
  std::ostringstream t;
  t << "kind: " << to_string(cls.kind) << "\n";
  if (cls.kind == BoundaryKind::NotMonodromic) {
    j["reason"] = cls.reason;
    t << "reason: " << cls.reason << "\n";
  } else {
    j["upper"] = side_json(cls.upper);
    j["lower"] = side_json(cls.lower);
    t << "upper: " << side_text(cls.upper) << "\n" << "lower: " << side_text(cls.lower) << "\n";
  }
  j["orientation_record"] = cls.normalized.orientation_record;
  for (const auto& r : cls.normalized.orientation_record) t << "normalization: " << r << "\n";
  emit(cfg, out, j, t.str());
  return kExitOk;
}

int cmd_normal_form(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  Json j = header(cfg, a.cls);
  std::ostringstream t;
  t << "type " << to_string(a.cls.kind) << ", N = " << a.N << "\n";
  if (a.upper_focus) {
    const auto& f = *a.upper_focus;
    j["upper_focus"] = {{"alpha", f.alpha.str()}, {"beta", f.beta.str()}, {"T", polys(f.T, 1)},
                        {"gamma", polys(f.gamma, 1)}};
    t << "upper focus: alpha = " << f.alpha << ", beta = " << f.beta << "\n" << poly_list(f.gamma, 1, "gamma+");
  }
  if (a.lower_focus) {
    j["lower_focus"] = {{"gamma", polys(a.lower_focus->gamma_lower, 1)}};
    t << "lower focus:\n" << poly_list(a.lower_focus->gamma_lower, 1, "gamma-");
  }
  if (a.lower_tangency) {
    const auto& l = *a.lower_tangency;
    j["lower_tangency"] = {{"ell", l.ell}, {"a0", l.a0.str()}, {"mu", polys(l.mu, 2)}, {"T", polys(l.T, 1)},
                           {"r0", polys(l.r0, 2)}};
    t << "lower tangency: ell = " << l.ell << ", a0 = " << l.a0 << "\n" << poly_list(l.mu, 2, "mu-")
      << poly_list(l.r0, 2, "r0");
  }
  if (a.upper_tangency) {
    const auto& u = *a.upper_tangency;
    j["upper_tangency"] = {{"ell", u.ell}, {"a0", u.a0.str()}, {"nu", polys(u.nu, 2)}, {"eta", polys(u.eta, 2)},
                           {"sigma", polys(u.sigma, 2)}};
    t << "upper tangency (coupled): ell = " << u.ell << ", a0 = " << u.a0 << "\n" << poly_list(u.sigma, 2, "sigma");
  }
  emit(cfg, out, j, t.str());
  return kExitOk;
}

int cmd_lyapunov(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  FocusOrder o = focus_order(a.seq);
  Json j = header(cfg, a.cls);
  Json entries = Json::array();
  std::ostringstream t;
  t << "type " << to_string(a.cls.kind) << ", N = " << a.N << "  (E = exp(gamma1+ * pi))\n";
  for (const auto& e : a.seq.entries) {
    bool first = o.kind != FocusOrder::Kind::CenterUpToOrder && e.k == o.index;
    std::string v = render_v(e, a);
    entries.push_back({{"k", e.k},
                       {"L", e.L.str()},
                       {"reduced", e.reduced.str()},
                       {"factor", e.factor.str()},
                       {"V", v},
                       {"canonical", e.canonical},
                       {"first_nonzero", first}});
    t << "V_" << e.k << " = " << v << (first ? "    <- first nonzero" : "") << "\n";
    t << "    L_" << e.k << " = " << e.L.str() << "\n";
    if (!(e.reduced == e.L)) t << "    reduced = " << e.reduced.str() << "\n";
    t << "    factor: " << e.factor.str() << (e.canonical ? "" : "  (reduction not canonical: budget)") << "\n";
  }
  j["entries"] = entries;
  j["focus_order"] = order_json(o);
  t << "focus order: " << o.str() << "\n";
  emit(cfg, out, j, t.str());
  return kExitOk;
}

int cmd_order(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  FocusOrder o = focus_order(a.seq);
  Json j = header(cfg, a.cls);
  j["focus_order"] = order_json(o);
  emit(cfg, out, j, "focus order: " + o.str() + "\n");
  return kExitOk;
}

int cmd_center_check(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  FocusOrder o = focus_order(a.seq);
  const auto& first = a.cls.kind == BoundaryKind::PP ? a.sigma : a.gamma_plus;
  TruncationCenter tc = center_truncation_check(a.cls.kind, first, a.gamma_minus, a.N);
  Json j = header(cfg, a.cls);
  j["focus_order"] = order_json(o);
  j["truncated_normal_form_center"] = tc.center;
  if (!tc.center) j["witness"] = tc.witness;
  Json conds = Json::array();
  for (const auto& e : a.seq.entries)
    if (!e.reduced.is_zero()) conds.push_back(e.reduced.str());
  j["center_conditions"] = conds;
  std::ostringstream t;
  t << "focus order: " << o.str() << "\n";
  t << "truncated normal form is a center: " << (tc.center ? "yes" : "no (first violated index " +
                                                                          std::to_string(tc.witness) + ")")
    << "\n";
  if (o.kind == FocusOrder::Kind::ParameterDependent) {
    t << "center up to order " << a.N << " iff\n";
    for (const auto& c : conds) t << "  " << c.get<std::string>() << " = 0\n";
  }
  emit(cfg, out, j, t.str());
  return kExitOk;
}

int cmd_possible_orders(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  const auto& s = a.cls.normalized;
  std::optional<int> sp = smooth_focus_order(s.ring, s.upper, cfg.N);
  std::optional<int> sm;
  if (a.cls.kind == BoundaryKind::FF) sm = smooth_focus_order(s.ring, s.lower, cfg.N);
  OrderSet set = possible_orders(a.cls.kind, sp, sm);
  FocusOrder o = focus_order(a.seq);
  auto show = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("infinity"); };
  Json j = header(cfg, a.cls);
  j["upper_smooth_order"] = show(sp);
  if (a.cls.kind == BoundaryKind::FF) j["lower_smooth_order"] = show(sm);
  j["possible_orders"] = set.str();
  j["focus_order"] = order_json(o);
  bool inside = set.contains(o);
  j["contained"] = inside;
  std::ostringstream t;
  t << "upper subsystem order: " << show(sp) << "\n";
  if (a.cls.kind == BoundaryKind::FF) t << "lower subsystem order: " << show(sm) << "\n";
  t << "possible orders: " << set.str() << "\n" << "focus order: " << o.str() << (inside ? " (admissible)" : " (NOT admissible)")
    << "\n";
  emit(cfg, out, j, t.str());
  return inside ? kExitOk : kExitMismatch;
}

int cmd_crosscheck(const RunConfig& cfg, const Analysis& a, std::ostream& out) {
  CrosscheckReport rep = crosscheck_return_map(a);
  Json j = header(cfg, a.cls);
  Json entries = Json::array();
  std::ostringstream t;
  for (const auto& e : rep.entries) {
    entries.push_back({{"k", e.k}, {"status", to_string(e.status)}, {"detail", e.detail}});
    t << "k=" << e.k << ": " << to_string(e.status) << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
  }
  j["entries"] = entries;
  j["ok"] = rep.ok();
  j["factor_discrepancy"] = rep.discrepancy();
  t << "verdict: " << (rep.ok() ? "OK" : "MISMATCH") << (rep.discrepancy() ? " (factor discrepancy reported)" : "")
    << "\n";
  emit(cfg, out, j, t.str());
  return rep.ok() ? kExitOk : kExitMismatch;
}

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

int cmd_oracle(const RunConfig& cfg, const PiecewiseSystem& sys, const Analysis& a, std::ostream& out) {
  DisplacementFit fit = fit_displacement(sys, cfg.grid, oracle_options(cfg));
  OracleVerdict v = compare_with_symbolic(fit, a, cfg.rel_tol);
  FocusOrder o = focus_order(a.seq);
  std::string symbolic = o.kind == FocusOrder::Kind::CenterUpToOrder ? "center up to order " + std::to_string(a.N)
                                                                    : render_v(a.seq.at(o.index), a);
  Json j = header(cfg, a.cls);
  j["grid"] = {{"xmax", cfg.grid.xmax}, {"rho", cfg.grid.rho}, {"count", cfg.grid.count}};
  j["precision_bits"] = cfg.precision_bits;
  Json samples = Json::array();
  for (std::size_t i = 0; i < fit.x.size(); ++i)
    samples.push_back({{"x", fit.x[i].str(20)}, {"delta", fit.delta[i].str(20)}, {"noise", fit.noise[i].str(4)}});
  j["samples"] = samples;
  std::ostringstream t;
  if (fit.center_consistent) {
    j["numeric"] = {{"center_consistent", true}};
    t << "center-consistent";
  } else {
    j["numeric"] = {{"center_consistent", false},
                    {"m", fit.order},
                    {"slope", fmt(fit.slope, 6)},
                    {"V", fmt(fit.coefficient.to_double(), 8)},
                    {"uncertainty", fmt(fit.uncertainty.to_double(), 3)}};
    t << "m=" << fit.order << ", V=" << fmt(fit.coefficient.to_double(), 4);
  }
  j["symbolic"] = {{"focus_order", order_json(o)}, {"V", symbolic}, {"value", fmt(v.symbolic_value, 12)}};
  j["verdict"] = v.ok ? "OK" : "MISMATCH";
  t << ", symbolic=" << symbolic << ", verdict=" << (v.ok ? "OK" : "MISMATCH") << "\n";
  emit(cfg, out, j, t.str());
  return v.ok ? kExitOk : kExitMismatch;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Normal forms and Lyapunov constants of planar piecewise-smooth polynomial systems", "pwsnf"};
  std::vector<std::string> sets;
  std::string format = "text", grid;
  app.add_option("command", cfg.command, "classify | normal-form | lyapunov | order | center-check | "
                                         "possible-orders | oracle | crosscheck")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("input", cfg.input, "TOML system file")->required();
  app.add_option("-N", cfg.N, "normal form order")->check(CLI::PositiveNumber);
  app.add_option("--set", sets, "parameter substitutions name=value");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--grid", grid, "oracle grid xmax,rho,count");
  app.add_option("--tolerance", cfg.rel_tol, "oracle relative tolerance on V_k");
  app.add_option("--precision", cfg.precision_bits, "oracle MPFR precision in bits")->check(CLI::Range(64, 4096));
  app.add_option("--budget", cfg.budget, "step budget for Groebner reduction and per half return");
  app.add_option("--threads", cfg.threads, "oracle worker threads (0: all cores)");
  app.add_option("--symbolic", cfg.symbolic_input, "oracle: symbolic side from another system file");
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw InputError(std::string("command line: ") + e.what());
  }
  cfg.json = format == "json";
  for (const auto& s : sets) {
    std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--set expects name=value, got '" + s + "'");
    cfg.sets.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!grid.empty()) {
    char c1 = 0, c2 = 0;
    std::istringstream is(grid);
    if (!(is >> cfg.grid.xmax >> c1 >> cfg.grid.rho >> c2 >> cfg.grid.count) || c1 != ',' || c2 != ',' ||
        !is.eof())
      throw InputError("--grid expects xmax,rho,count, got '" + grid + "'");
  }
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  PiecewiseSystem sys = load_system(cfg.input, cfg.sets);
  if (cfg.command == "classify") return cmd_classify(cfg, sys, out);
  Analysis a = analyze(sys, cfg.N, analyze_options(cfg));
  if (cfg.command == "normal-form") return cmd_normal_form(cfg, a, out);
  if (cfg.command == "lyapunov") return cmd_lyapunov(cfg, a, out);
  if (cfg.command == "order") return cmd_order(cfg, a, out);
  if (cfg.command == "center-check") return cmd_center_check(cfg, a, out);
  if (cfg.command == "possible-orders") return cmd_possible_orders(cfg, a, out);
  if (cfg.command == "crosscheck") return cmd_crosscheck(cfg, a, out);
  if (cfg.command == "oracle") {
    if (cfg.symbolic_input.empty()) return cmd_oracle(cfg, sys, a, out);
    Analysis other = analyze(load_system(cfg.symbolic_input, cfg.sets), cfg.N, analyze_options(cfg));
    return cmd_oracle(cfg, sys, other, out);
  }
  throw InputError("unknown command " + cfg.command);
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const CLI::CallForHelp&) {
    out << "usage: pwsnf <command> <input.toml> [-N n] [--set name=value ...] [--format text|json]\n"
           "             [--grid xmax,rho,count] [--precision bits] [--budget steps] [--symbolic file]\n"
           "commands: classify normal-form lyapunov order center-check possible-orders oracle crosscheck\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "input error: " << e.what();
    if (e.token) err << " (token " << e.token << ", column " << e.column << ")";
    err << "\n";
    return kExitInput;
  } catch (const EscapeError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "resource budget exhausted: " << e.what() << "\n  raise --budget or lower -N\n";
    return kExitResource;
  } catch (const OrderAmbiguous& e) {
    err << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
}

}  // namespace pwsnf
