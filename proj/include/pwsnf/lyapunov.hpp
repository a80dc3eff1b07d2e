#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwsnf/extscalar.hpp"
#include "pwsnf/groebner.hpp"
#include "pwsnf/nf_focus.hpp"
#include "pwsnf/nf_tangency.hpp"
#include "pwsnf/system.hpp"
#include "pwsnf/trigexp.hpp"

namespace pwsnf {

// Positive factor C_k with V_k = L_k * C_k (k >= 2), or the exponential difference for k = 1.
enum class FactorKind { ExpDifferenceFF, ExpDifferenceFP, FF, FP, PP };

struct FactorTag {
  FactorKind kind = FactorKind::FP;
  int k = 0;
  Rational gamma1;  // upper gamma_1 (FF)
  int ell = 0;      // upper multiplicity parameter (PP)
  std::string str() const;
  // Exact value; not defined for the k = 1 exponential differences.
  ExtScalar value() const;
};

// Closed constants: C^FF_k(g), C^FP_k, and the integral form e^{g pi} int_0^pi sin^{k-1} e^{(k-1) g tau}.
ExtScalar c_ff(int k, const Rational& gamma1);
ExtScalar c_fp(int k);
ExtScalar c_hat(int k, const Rational& gamma1);
Enclosure factor_enclosure(const FactorTag& f, int digits);

struct LyapunovEntry {
  int k = 0;
  Poly L;                        // polynomial part
  FactorTag factor;
  Poly reduced;                  // L modulo the ideal of L_1..L_{k-1}
  std::vector<Poly> prior_basis;  // Groebner basis (or plain generators if not canonical) used for `reduced`
  bool canonical = true;          // false when the basis computation hit the budget
};

struct LyapunovSequence {
  BoundaryKind type = BoundaryKind::FF;
  int N = 0;
  std::vector<LyapunovEntry> entries;  // entries[k-1], k = 1..N+1
  const LyapunovEntry& at(int k) const { return entries.at(static_cast<std::size_t>(k - 1)); }
};

// gamma vectors are indexed 1..N+1; gm follows the lower-side sign convention.
LyapunovSequence lyapunov_ff(const std::vector<Poly>& gp, const std::vector<Poly>& gm, int N,
                             const GroebnerOptions& opt = {});
LyapunovSequence lyapunov_fp(const std::vector<Poly>& gp, int N, const GroebnerOptions& opt = {});
LyapunovSequence lyapunov_pp(const std::vector<Poly>& sigma, int ell, int N, const GroebnerOptions& opt = {});

struct FocusOrder {
  enum class Kind { Value, CenterUpToOrder, ParameterDependent };
  Kind kind = Kind::Value;
  int twice = 0;   // order = twice / 2
  int index = 0;   // k of the first nonzero (Value, ParameterDependent)
  int sign = 0;    // sign of V_k (Value)
  int N = 0;
  std::vector<std::string> conditions;  // ParameterDependent
  std::string str() const;
};

FocusOrder focus_order(const LyapunovSequence& seq);

// Explicit descriptor of the admissible order set; orders are stored doubled (n means n/2).
struct OrderSet {
  std::string label;          // case (a) .. (e) or "any"
  std::vector<int> finite;    // explicit doubled orders
  int tail_from = -1;         // all n >= tail_from (if >= 0)
  bool all_odd = false;       // every odd n
  bool center = false;        // infinity admissible
  bool contains(int twice) const;
  // True when an element >= (N+1)/2 or infinity is admissible.
  bool admits_center_up_to(int N) const;
  bool contains(const FocusOrder& o) const;
  std::string str() const;
};

// Subsystem orders: nullopt means infinity (center). sm is ignored for FP.
OrderSet possible_orders(BoundaryKind type, std::optional<int> sp, std::optional<int> sm);

struct TruncationCenter {
  bool center = true;
  int witness = 0;  // first violated index
};

// FF: a = gamma+, b = gamma- (k = 1..N+1). FP: a = gamma+. PP: a = sigma+ (even indices).
TruncationCenter center_truncation_check(BoundaryKind type, const std::vector<Poly>& a, const std::vector<Poly>& b,
                                         int N);

struct ReturnMapFF {
  Rational gamma1;
  int N = 0;
  std::vector<TrigExpPoly> r;        // r[j](tau), j = 1..N+1
  std::vector<ExtSum<Poly>> u;       // u[k] = r_k(pi), Pi(x) = -sum u_k x^k
};

// gamma[1] must be a rational constant; gamma[k], k >= 2 may be symbolic.
ReturnMapFF upper_return_map_ff(const std::vector<Poly>& gamma, int N);

struct ReturnMapPP {
  int ell = 0, N = 0;
  std::vector<Poly> v;  // v[k], k = 1..N+1, Pi(x) = -sum v_k x^k
};

ReturnMapPP upper_return_map_pp(const std::vector<Poly>& sigma, int ell, int N);

struct AnalyzeOptions {
  std::vector<Poly> C;  // FF free constants C_k (index 2..N+1); zero when absent
  GroebnerOptions groebner;
};

struct Analysis {
  BoundaryClass cls;
  int N = 0;
  std::optional<FocusNF> upper_focus;
  std::optional<LowerFocusNF> lower_focus;
  std::optional<TangencyNF> upper_tangency, lower_tangency;
  ConsistencyReport consistency;
  std::vector<Poly> gamma_plus, gamma_minus;  // FF/FP, index 1..N+1
  std::vector<Poly> sigma;                    // PP, index 2..N+1
  LyapunovSequence seq;
};

Analysis analyze(const PiecewiseSystem& sys, int N, const AnalyzeOptions& opt = {});

// Order of a smooth focus: the field duplicated into both half planes. nullopt when
// V_1..V_{N+1} all vanish.
std::optional<int> smooth_focus_order(const Ring& ring, const Field& f, int N);

enum class CrossStatus { Agree, FactorDiscrepancy, Mismatch, Skipped };
std::string to_string(CrossStatus s);

struct CrosscheckEntry {
  int k = 0;
  CrossStatus status = CrossStatus::Skipped;
  std::string detail;
};

struct CrosscheckReport {
  BoundaryKind type = BoundaryKind::FF;
  std::vector<CrosscheckEntry> entries;
  bool ok() const;           // no Mismatch
  bool discrepancy() const;  // some FactorDiscrepancy
};

// Return-map coefficients versus L_k * C_k, reduced modulo the prior constants of the sequence.
CrosscheckReport crosscheck_return_map(const Analysis& a);

// Same comparison with abstract coefficient symbols, modulo the (linear) ideal of prior L's.
CrosscheckReport crosscheck_abstract_ff(const Rational& gamma1, int N);
CrosscheckReport crosscheck_abstract_fp(int N);
CrosscheckReport crosscheck_abstract_pp(int ell, int N);

}  // namespace pwsnf
