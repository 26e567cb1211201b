#pragma once

#include <optional>

#include "surprisal/lorenz.hpp"

namespace surprisal {

// Variance-based sufficient condition for an eps-transition:
// S(from) - f(from) >= S(to) + f(to) with f = sqrt(V (2/eps - 1)).
// certified_eps is the smoothing (2/delta^2)(sqrt(V)+sqrt(V'))^2 the entropy
// gap delta = S(from)-S(to) certifies on its own, +inf when delta <= 0.
struct SufficiencyVerdict {
  bool sufficient;
  double lhs;
  double rhs;
  double certified_eps;
};

SufficiencyVerdict sufficient_condition(const Dichotomy& from, const Dichotomy& to, double eps);

// Smoothing error sufficient for n-copy conversion at rate 1,
// 2 (sqrt(V)+sqrt(V'))^2 / (n dS^2) clipped to [0,1]; requires S(from) > S(to).
double iid_error_bound(const Dichotomy& from, const Dichotomy& to, double n);

// Certified conversion rate for from^(n) -> to^(rate n) at smoothing eps_n.
// The quadratic M^2 + sqrt(k') M - (r - sqrt(k)) < 0 in M = sqrt(rate) bounds
// certified rates by its positive root; resonance_gap = -sqrt(k) + sqrt(r k')
// vanishes exactly when V/S == V'/S'.
struct RateReport {
  double n;
  double eps_n;
  bool feasible;        // false when r <= sqrt(k): no positive rate certified
  double rate_lower;    // squared positive root, 0 when infeasible
  double resonance_gap;
  double k;
  double k_prime;
};

RateReport iid_rate_bound(const Dichotomy& from, const Dichotomy& to, double n, double eps_n);

// Entropy-production lower bound dS >= dV / (2 sqrt(M_smin(from))).
struct ProductionBound {
  double delta_s;  // realized S(from) - S(to)
  double delta_v;  // V(from) - V(to)
  double bound;
  bool satisfied;
};

ProductionBound entropy_production_bound(const Dichotomy& from, const Dichotomy& to);

// Bipartite marginal-production budget.  joint_final is the post-transition
// joint spectrum over dim_s x dim_e with marginal references ref_s, ref_e;
// the inequality reads lhs >= rhs.
struct MarginalBudget {
  double lhs;          // dS_S + dS_E
  double rhs;          // (dV_S + dV_E - K f(I)) / (2 sqrt(M))
  double mutual_info;  // I(S:E) of joint_final
  double k_const;
  double m_from;       // M_smin of the initial product dichotomy
};

MarginalBudget marginal_budget(const Spectrum& joint_final, int dim_s, int dim_e,
                               const Dichotomy& from_s, const Dichotomy& from_e,
                               const Spectrum& ref_s, const Spectrum& ref_e);

// K and f used by the marginal budget and the catalyst bound:
// K = sqrt(2 ln2) (12 + log2(smin)^2 + 8 log2(d_joint)^2), f(x) = max(sqrt x, x^(1/4)).
double marginal_k_const(double smin, double d_joint);
double mutual_info_penalty(double x);

// Minimal battery size for erasing p against uniform references:
// n_exact is the smallest n <= n_max with p (x) pure^n majorizing
// pure (x) (uniform qubit)^n, n_bound = H + V/(2 sqrt(M)).
struct LandauerReport {
  std::optional<int> n_exact;
  double n_bound;
};

LandauerReport landauer(const Spectrum& p, int n_max);

// Entropy budget a catalyst of dimension dim_e can hide when the system
// entropy rises by at most delta: 2 sqrt(M_from) delta + K f(delta).
double catalyst_bound(double delta, int dim_s, int dim_e, double m_from);

}  // namespace surprisal
