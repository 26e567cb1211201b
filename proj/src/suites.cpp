#include "surprisal/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "surprisal/approx.hpp"
#include "surprisal/errors.hpp"
#include "surprisal/io.hpp"
#include "surprisal/lorenz.hpp"
#include "surprisal/spectral.hpp"
#include "surprisal/transitions.hpp"

namespace surprisal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeaken = 0x1.0p-10;

// Rounding allowance folded into each slack so honest equality cases do not
// register as violations.
double grace(double a, double b = 0.0) { return 1e-12 * (1.0 + std::abs(a) + std::abs(b)); }

struct DigestBuf {
  std::vector<double> v;

  void add(double x) { v.push_back(x); }
  void add(const Spectrum& s) { v.insert(v.end(), s.values.begin(), s.values.end()); }
  void add(const Matrix& m) {
    for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
  }
  std::uint64_t done() const { return fnv_digest(v); }
};

int pick_dim(Rng& rng, const SamplerConfig& cfg, int lo = 2, int hi = 1 << 20) {
  const int a = std::clamp(cfg.dim_min, lo, hi);
  const int b = std::clamp(cfg.dim_max, a, hi);
  return rng.uniform_int(a, b);
}

double continuity_k(int dim, double smin) {
  const double ld = std::log2(static_cast<double>(dim));
  const double ls = std::log2(smin);
  return 8.0 * ld * ld + ld + 2.0 * ls * ls - 4.0 * std::numbers::ln2 * ls + 15.0;
}

// |V(p||sigma) - V(q||sigma)| <= 2 K sqrt(T(p,q))
TrialOutcome trial_continuity(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Spectrum sigma = sample_spectrum(rng, d, cfg.concentration, 0.05 / d);
  const Spectrum p = sample_spectrum(rng, d, cfg.concentration);
  Spectrum q;
  if (rng.uniform() < 0.5) {
    q = sample_spectrum(rng, d, cfg.concentration);
  } else {
    // nearby pair, cubed mix weight skews toward small distances
    const double t = std::pow(rng.uniform(), 3.0);
    const Spectrum fresh = sample_spectrum(rng, d, cfg.concentration);
    std::vector<double> mixed(p.values);
    for (std::size_t i = 0; i < mixed.size(); ++i)
      mixed[i] = (1.0 - t) * p.values[i] + t * fresh.values[i];
    q = validate_spectrum(std::move(mixed), 1e-6);
  }
  const double smin = *std::min_element(sigma.values.begin(), sigma.values.end());
  const double dist = trace_distance(p, q);
  const double vp = measures(make_dichotomy(p, sigma)).V;
  const double vq = measures(make_dichotomy(q, sigma)).V;
  double bound = 2.0 * continuity_k(d, smin) * std::sqrt(dist);
  if (mutate) bound *= kWeaken;
  const double value = std::abs(vp - vq);
  DigestBuf dig;
  dig.add(d);
  dig.add(sigma);
  dig.add(p);
  dig.add(q);
  return {bound - value + grace(bound, value), dig.done()};
}

// V(joint||s1 (x) s2) <= V1 + V2 + K' f(I)
TrialOutcome trial_subadditivity(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int hi = std::clamp(cfg.dim_max / 2, 2, 4);
  const int d1 = rng.uniform_int(2, hi);
  const int d2 = rng.uniform_int(2, hi);
  const Spectrum joint = sample_spectrum(rng, d1 * d2, cfg.concentration);
  const Spectrum s1 = sample_spectrum(rng, d1, cfg.concentration, 0.05 / d1);
  const Spectrum s2 = sample_spectrum(rng, d2, cfg.concentration, 0.05 / d2);
  const Spectrum sj = kron(s1, s2);
  const double v = measures(make_dichotomy(joint, sj)).V;
  const double v1 = measures(make_dichotomy(marginal_first(joint, d1, d2), s1)).V;
  const double v2 = measures(make_dichotomy(marginal_second(joint, d1, d2), s2)).V;
  const double info = mutual_information(joint, d1, d2);
  const double smin = *std::min_element(sj.values.begin(), sj.values.end());
  double bound = v1 + v2 + marginal_k_const(smin, static_cast<double>(d1 * d2)) *
                               mutual_info_penalty(info);
  if (mutate) bound *= kWeaken;
  DigestBuf dig;
  dig.add(d1);
  dig.add(d2);
  dig.add(joint);
  dig.add(s1);
  dig.add(s2);
  return {bound - v + grace(bound, v), dig.done()};
}

// M_x never decreases along a channel applied to both halves.
TrialOutcome trial_monotone(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Dichotomy from = sample_dichotomy(rng, d, cfg.concentration, 0.02 / d);
  const int d_to = pick_dim(rng, cfg);
  const Matrix chan = sample_stochastic(rng, d, d_to);
  const Dichotomy to = evolve(from, chan);
  const double x = std::min(*std::min_element(from.s.values.begin(), from.s.values.end()),
                            *std::min_element(to.s.values.begin(), to.s.values.end()));
  const double m0 = monotone_m(from, x);
  const double m1 = monotone_m(to, x);
  const double raw = mutate ? m0 - m1 : m1 - m0;
  DigestBuf dig;
  dig.add(d);
  dig.add(d_to);
  dig.add(from.p);
  dig.add(from.s);
  dig.add(chan);
  return {raw + grace(m0, m1), dig.done()};
}

// Realized entropy production dominates dV / (2 sqrt(M)).
TrialOutcome trial_production(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Dichotomy from = sample_dichotomy(rng, d, cfg.concentration, 0.02 / d);
  const int d_to = pick_dim(rng, cfg);
  const Matrix chan = sample_stochastic(rng, d, d_to);
  const Dichotomy to = evolve(from, chan);
  const ProductionBound pb = entropy_production_bound(from, to);
  const double raw = mutate ? pb.bound - pb.delta_s : pb.delta_s - pb.bound;
  DigestBuf dig;
  dig.add(d);
  dig.add(d_to);
  dig.add(from.p);
  dig.add(from.s);
  dig.add(chan);
  return {raw + grace(pb.delta_s, pb.bound), dig.done()};
}

// Bipartite marginal-production budget under a bistochastic joint channel.
TrialOutcome trial_marginal(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int ds = rng.uniform_int(2, 3);
  const int de = rng.uniform_int(2, 3);
  const Spectrum from_s = sample_spectrum(rng, ds, cfg.concentration);
  const Spectrum from_e = sample_spectrum(rng, de, cfg.concentration);
  const Matrix chan = sample_bistochastic(rng, ds * de);
  const Spectrum joint_final =
      validate_spectrum(push_through(kron(from_s, from_e).values, chan), 1e-6);
  const MarginalBudget mb =
      marginal_budget(joint_final, ds, de, make_dichotomy(from_s, uniform_spectrum(ds)),
                      make_dichotomy(from_e, uniform_spectrum(de)), uniform_spectrum(ds),
                      uniform_spectrum(de));
  const double raw = mutate ? mb.rhs - mb.lhs : mb.lhs - mb.rhs;
  DigestBuf dig;
  dig.add(ds);
  dig.add(de);
  dig.add(from_s);
  dig.add(from_e);
  dig.add(chan);
  return {raw + grace(mb.lhs, mb.rhs), dig.done()};
}

// Envelope curves min(r x, 1) pinch the steep and flat curves.
TrialOutcome trial_cantelli(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Dichotomy dich = sample_dichotomy(rng, d, cfg.concentration, 0.02 / d);
  const double eps = rng.uniform(0.02, 0.95);
  Envelopes env = cantelli_envelopes(dich, eps);
  // sign-flipping the slack would miss: the steep bound is exact at x = 0 on
  // every instance, so weaken by inflating the envelope slope instead
  if (mutate) env.r_steep /= kWeaken;
  const LorenzCurve steep =
      lorenz_curve(make_dichotomy(steep_approximation(dich, eps).spectrum, dich.s));
  const LorenzCurve flat =
      lorenz_curve(make_dichotomy(flat_approximation(dich, eps).spectrum, dich.s));

  auto envelope_gap = [](const LorenzCurve& curve, double r, bool curve_above) {
    std::vector<double> xs;
    for (const auto& pt : curve.points) xs.push_back(pt.first);
    if (r > 1.0) xs.push_back(1.0 / r);
    double worst = kInf;
    for (double x : xs) {
      const double e = std::min(r * x, 1.0);
      const double c = eval_at(curve, x);
      worst = std::min(worst, curve_above ? c - e : e - c);
    }
    return worst;
  };
  const double raw =
      std::min(envelope_gap(steep, env.r_steep, true), envelope_gap(flat, env.r_flat, false));
  DigestBuf dig;
  dig.add(d);
  dig.add(eps);
  dig.add(dich.p);
  dig.add(dich.s);
  return {raw + grace(raw), dig.done()};
}

// curve(steep e2) >= curve(steep e1) >= curve(rho) >= curve(flat e1) >= curve(flat e2).
TrialOutcome trial_sandwich(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Dichotomy dich = sample_dichotomy(rng, d, cfg.concentration, 0.02 / d);
  const double eps1 = rng.uniform(0.01, 0.5);
  const double eps2 = std::min(0.98, eps1 + rng.uniform(0.0, 0.5));
  const LorenzCurve rho = lorenz_curve(dich);
  const LorenzCurve st1 =
      lorenz_curve(make_dichotomy(steep_approximation(dich, eps1).spectrum, dich.s));
  const LorenzCurve st2 =
      lorenz_curve(make_dichotomy(steep_approximation(dich, eps2).spectrum, dich.s));
  const LorenzCurve fl1 =
      lorenz_curve(make_dichotomy(flat_approximation(dich, eps1).spectrum, dich.s));
  const LorenzCurve fl2 =
      lorenz_curve(make_dichotomy(flat_approximation(dich, eps2).spectrum, dich.s));
  DigestBuf dig;
  dig.add(d);
  dig.add(eps1);
  dig.add(eps2);
  dig.add(dich.p);
  dig.add(dich.s);
  if (mutate) {
    // deliberately wrong link: rho never dominates its own steepening
    return {dominates(rho, st1).worst_gap + 1e-12, dig.done()};
  }
  const double raw = std::min({dominates(st2, st1).worst_gap, dominates(st1, rho).worst_gap,
                               dominates(rho, fl1).worst_gap, dominates(fl1, fl2).worst_gap});
  return {raw + 1e-12, dig.done()};
}

// Whenever the variance condition certifies an eps-transition, the steep/flat
// certificate must agree.
TrialOutcome trial_sufficiency(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const double branch = rng.uniform();
  double eps = rng.uniform(0.05, 0.5);
  Dichotomy from = sample_dichotomy(rng, pick_dim(rng, cfg), cfg.concentration, 0.0);
  Dichotomy to = from;
  if (branch < 0.45) {
    // engineered toward sufficiency: sharp state down to a nearly flat one
    const int df = pick_dim(rng, cfg);
    std::vector<double> pf(static_cast<std::size_t>(df), 0.0);
    if (rng.uniform() < 0.5) {
      pf[0] = 1.0;
    } else {
      const double x0 = 1.0 - 0.001 * rng.uniform();
      pf[0] = x0;
      for (int i = 1; i < df; ++i) pf[static_cast<std::size_t>(i)] = (1.0 - x0) / (df - 1);
    }
    from = make_dichotomy(validate_spectrum(std::move(pf), 1e-6), uniform_spectrum(df));
    const int dt = pick_dim(rng, cfg);
    if (rng.uniform() < 0.5) {
      to = make_dichotomy(uniform_spectrum(dt), uniform_spectrum(dt));
    } else {
      const double t = rng.uniform(0.95, 1.0);
      const Spectrum noise = sample_spectrum(rng, dt, cfg.concentration);
      std::vector<double> pt(static_cast<std::size_t>(dt));
      for (int i = 0; i < dt; ++i)
        pt[static_cast<std::size_t>(i)] = (1.0 - t) * noise[i] + t / dt;
      to = make_dichotomy(validate_spectrum(std::move(pt), 1e-6), uniform_spectrum(dt));
    }
    eps = rng.uniform(0.1, 0.5);
  } else if (branch < 0.55) {
    // from == to: feasible but generically not certified (condition is sufficient only)
  } else {
    to = sample_dichotomy(rng, pick_dim(rng, cfg), cfg.concentration, 0.0);
  }
  DigestBuf dig;
  dig.add(eps);
  dig.add(from.p);
  dig.add(from.s);
  dig.add(to.p);
  dig.add(to.s);
  const SufficiencyVerdict sv = sufficient_condition(from, to, eps);
  if (!sv.sufficient) return {kInf, dig.done()};
  const TransitionVerdict tv = approx_transition(from, to, eps);
  const double raw = tv.worst_gap + 1e-12;
  return {mutate ? -raw : raw, dig.done()};
}

// Exact smoothed entropies stay within the variance window around S.
TrialOutcome trial_smoothed(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg, 2, 10);
  const Dichotomy dich = sample_dichotomy(rng, d, cfg.concentration, 0.02 / d);
  const double eps = rng.uniform(0.02, 0.6);
  const SmoothedBounds sb = smoothed_divergences(dich, eps, true);
  const MeasureSet ms = measures(dich);
  const double up = ms.S + sb.f_sigma - sb.smax_eps;
  const double down = sb.smin_eps_lower - (ms.S - sb.f_sigma);
  DigestBuf dig;
  dig.add(d);
  dig.add(eps);
  dig.add(dich.p);
  dig.add(dich.s);
  if (mutate) return {-std::min(up, down) + grace(ms.S, sb.f_sigma), dig.done()};
  const double exact_over_witness = *sb.smin_eps_exact - sb.smin_eps_lower;
  const double smoothing_down = ms.smax - sb.smax_eps;
  const double smoothing_up = *sb.smin_eps_exact - ms.smin;
  const double raw = std::min({up, down, exact_over_witness, smoothing_down, smoothing_up});
  return {raw + grace(ms.S, sb.f_sigma), dig.done()};
}

// Pointwise lemmas behind the continuity bound.
TrialOutcome trial_eta_chi(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  (void)cfg;
  const auto eta = [](double t) { return t <= 0.0 ? 0.0 : -t * std::log2(t); };
  const auto chi = [](double t, double q) {
    if (t <= 0.0) return 0.0;
    const double l = std::log2(t / q);
    return t * l * l;
  };
  const double pick = rng.uniform();
  double x1 = 0.0;
  double y1 = 0.0;
  if (pick < 0.05) {
    y1 = rng.uniform(0.0, 0.5);  // boundary case, the lemma is tight at x = 0
  } else {
    x1 = rng.uniform();
    y1 = std::clamp(x1 + rng.uniform(-0.5, 0.5), 0.0, 1.0);
  }
  const double b1 = eta(std::abs(x1 - y1));
  const double v1 = std::abs(eta(x1) - eta(y1));

  const double q = rng.uniform(0.05, 1.0);
  double x2 = rng.uniform() < 0.05 ? 0.0 : rng.uniform(0.0, q);
  const double reach = q * std::exp(-2.0);
  const double y2 = std::clamp(x2 + rng.uniform(-reach, reach), 0.0, q);
  const double b2 = chi(std::abs(x2 - y2), q);
  const double v2 = std::abs(chi(x2, q) - chi(y2, q));

  const double scale = mutate ? kWeaken : 1.0;
  const double raw = std::min(scale * b1 - v1, scale * b2 - v2);
  DigestBuf dig;
  dig.add(x1);
  dig.add(y1);
  dig.add(q);
  dig.add(x2);
  dig.add(y2);
  return {raw + (mutate ? 0.0 : grace(b1, b2)), dig.done()};
}

// Six cumulant terms approximate S_alpha within a kappa_7-sized remainder.
TrialOutcome trial_cumulant(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg);
  const Spectrum p = sample_spectrum(rng, d, cfg.concentration, 1e-12);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double alpha = 1.0 + sign * rng.uniform(0.01, 0.1);
  const std::vector<double> kappa = surprisal_cumulants(p, 7);
  const double t = (1.0 - alpha) * std::numbers::ln2;
  double partial = 0.0;
  double pw = 1.0;       // t^(n-1)
  double fact = 1.0;     // n!
  for (int n = 1; n <= 6; ++n) {
    fact *= n;
    partial += kappa[static_cast<std::size_t>(n - 1)] * pw / fact;
    pw *= t;
  }
  const double sa = renyi_entropy(p, alpha);
  // mean-value remainder: kappa_7 is taken at some tilt between p and
  // p^alpha/Z, where it equals that spectrum's own seventh cumulant divided
  // by alpha^7; calibrate on the worse endpoint
  std::vector<double> tilt(p.values);
  double z = 0.0;
  for (double& v : tilt) z += (v = std::pow(v, alpha));
  for (double& v : tilt) v /= z;
  const double k7_end =
      std::abs(surprisal_cumulants(Spectrum{std::move(tilt)}, 7)[6]) / std::pow(alpha, 7.0);
  const double k7 = std::max(std::abs(kappa[6]), k7_end);
  double c = 4.0 * k7 * std::pow(std::abs(t), 6.0) / 5040.0 + 1e-12 * (1.0 + std::abs(sa));
  if (mutate) c *= kWeaken;
  const double err = std::abs(sa - partial);
  DigestBuf dig;
  dig.add(d);
  dig.add(alpha);
  dig.add(p);
  return {c - err, dig.done()};
}

// Round-trip conditioning: min over entries of the product of gaps to all
// the others.  A unit perturbation of the power sums moves a root by about
// the reciprocal of this product, so it, not the smallest gap alone, decides
// which tolerance tier an instance can honestly meet.
double min_prod_gaps(const std::vector<double>& v) {
  double best = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != i) p *= std::abs(v[i] - v[j]);
    best = std::min(best, p);
  }
  return best;
}

// Renyi -> spectrum round trip at tiered tolerance.
TrialOutcome trial_spectral(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d = pick_dim(rng, cfg, 2, 8);
  std::vector<double> truth;
  if (rng.uniform() < 0.5) {
    // exact multiplicities
    const int k = rng.uniform_int(1, d - 1);
    std::vector<int> mult(static_cast<std::size_t>(k), 1);
    for (int extra = 0; extra < d - k; ++extra) ++mult[static_cast<std::size_t>(rng.uniform_int(0, k - 1))];
    const Spectrum w = sample_spectrum(rng, k, cfg.concentration, 0.02 / k);
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < mult[static_cast<std::size_t>(j)]; ++r)
        truth.push_back(w[j] / mult[static_cast<std::size_t>(j)]);
  } else {
    truth = sample_spectrum(rng, d, cfg.concentration, 1e-4 / d).values;
  }
  std::sort(truth.begin(), truth.end(), std::greater<double>());
  DigestBuf dig;
  dig.add(d);
  dig.add(Spectrum{truth});

  const Spectrum ref = validate_spectrum(truth, 1e-9);
  std::vector<double> renyi;
  for (int k = 2; k <= d; ++k) renyi.push_back(renyi_entropy(ref, static_cast<double>(k)));
  Spectrum rec;
  try {
    rec = spectrum_from_renyi(renyi, d);
  } catch (const error&) {
    return {-1.0, dig.done()};
  }
  double err = 0.0;
  for (int i = 0; i < d; ++i) err = std::max(err, std::abs(rec[i] - ref[i]));
  double min_gap = kInf;
  for (int i = 0; i + 1 < d; ++i) min_gap = std::min(min_gap, ref[i] - ref[i + 1]);
  std::vector<double> levels;  // distinct values; exact copies collapse
  for (int i = 0; i < d; ++i)
    if (levels.empty() || ref[i] != levels.back()) levels.push_back(ref[i]);
  double level_gap = kInf;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    level_gap = std::min(level_gap, levels[i] - levels[i + 1]);
  double tol = 1e-3;  // data-ambiguous neighborhood, any reading is gap-scale
  if (min_gap > 1e-3 && min_prod_gaps(ref.values) > 1e-8)
    tol = 1e-7;
  else if (level_gap > 1e-3 && min_prod_gaps(levels) > 1e-8)
    tol = 1e-5;  // resolvable multiplicity structure
  if (mutate) tol *= kWeaken * kWeaken;  // below the round-trip noise floor
  return {tol - err, dig.done()};
}

// Local Shannon entropies cannot jointly decrease under a bistochastic
// evolution of a product state.
TrialOutcome trial_local_monotone(Rng& rng, const SamplerConfig& cfg, bool mutate) {
  const int d1 = rng.uniform_int(2, std::clamp(cfg.dim_max / 2, 2, 4));
  const int d2 = rng.uniform_int(2, std::clamp(cfg.dim_max / 2, 2, 4));
  const Spectrum p1 = sample_spectrum(rng, d1, cfg.concentration);
  const Spectrum p2 = sample_spectrum(rng, d2, cfg.concentration);
  const Matrix chan = sample_bistochastic(rng, d1 * d2);
  const Spectrum joint = validate_spectrum(push_through(kron(p1, p2).values, chan), 1e-6);
  const double before = shannon_entropy(p1) + shannon_entropy(p2);
  const double after = shannon_entropy(marginal_first(joint, d1, d2)) +
                       shannon_entropy(marginal_second(joint, d1, d2));
  const double raw = mutate ? before - after : after - before;
  DigestBuf dig;
  dig.add(d1);
  dig.add(d2);
  dig.add(p1);
  dig.add(p2);
  dig.add(chan);
  return {raw + grace(before, after), dig.done()};
}

using TrialFn = TrialOutcome (*)(Rng&, const SamplerConfig&, bool);

struct SuiteEntry {
  const char* name;
  TrialFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"continuity", trial_continuity},   {"subadditivity", trial_subadditivity},
    {"monotone", trial_monotone},       {"production", trial_production},
    {"marginal", trial_marginal},       {"cantelli", trial_cantelli},
    {"sandwich", trial_sandwich},       {"sufficiency", trial_sufficiency},
    {"smoothed", trial_smoothed},       {"eta-chi", trial_eta_chi},
    {"cumulant", trial_cumulant},       {"spectral", trial_spectral},
    {"local-monotone", trial_local_monotone},
};

TrialFn find_suite(const std::string& name) {
  for (const auto& entry : kSuites)
    if (name == entry.name) return entry.fn;
  fail(errc::unknown_suite, "no suite named '" + name + "'");
}

void check_config(const SamplerConfig& cfg) {
  if (cfg.trials < 0) fail(errc::out_of_range, "trials must be non-negative");
  if (cfg.dim_min < 1 || cfg.dim_max < cfg.dim_min || cfg.dim_max < 2)
    fail(errc::out_of_range, "need 1 <= dim_min <= dim_max and dim_max >= 2");
  if (!(cfg.concentration > 0.0)) fail(errc::out_of_range, "concentration must be positive");
}

TrialOutcome guarded_trial(TrialFn fn, const SamplerConfig& cfg, std::uint64_t offset,
                           bool mutate) {
  Rng rng = trial_rng(cfg.seed, offset);
  try {
    return fn(rng, cfg, mutate);
  } catch (const error&) {
    // a throwing trial is itself a failed property
    return {-kInf, 0};
  }
}

PropertyReport run_impl(const std::string& suite, const SamplerConfig& cfg, bool mutate,
                        bool parallel) {
  const TrialFn fn = find_suite(suite);
  check_config(cfg);
  PropertyReport rep;
  rep.suite = suite;
  rep.trials = cfg.trials;
  const auto t0 = std::chrono::steady_clock::now();

  if (parallel) {
#pragma omp parallel
    {
      std::vector<Violation> local;
      double local_worst = kInf;
#pragma omp for schedule(dynamic, 16) nowait
      for (int t = 0; t < cfg.trials; ++t) {
        const TrialOutcome out = guarded_trial(fn, cfg, static_cast<std::uint64_t>(t), mutate);
        local_worst = std::min(local_worst, out.slack);
        if (out.slack < 0.0)
          local.push_back({static_cast<std::uint64_t>(t), out.digest, out.slack});
      }
#pragma omp critical
      {
        rep.worst_slack = std::min(rep.worst_slack, local_worst);
        rep.violations.insert(rep.violations.end(), local.begin(), local.end());
      }
    }
  } else {
    for (int t = 0; t < cfg.trials; ++t) {
      const TrialOutcome out = guarded_trial(fn, cfg, static_cast<std::uint64_t>(t), mutate);
      rep.worst_slack = std::min(rep.worst_slack, out.slack);
      if (out.slack < 0.0)
        rep.violations.push_back({static_cast<std::uint64_t>(t), out.digest, out.slack});
    }
  }

  std::sort(rep.violations.begin(), rep.violations.end(),
            [](const Violation& a, const Violation& b) { return a.offset < b.offset; });
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : kSuites) v.emplace_back(entry.name);
    return v;
  }();
  return names;
}

TrialOutcome replay_trial(const std::string& suite, const SamplerConfig& cfg,
                          std::uint64_t offset, bool mutate) {
  const TrialFn fn = find_suite(suite);
  check_config(cfg);
  return guarded_trial(fn, cfg, offset, mutate);
}

PropertyReport run_suite(const std::string& suite, const SamplerConfig& cfg, bool mutate) {
  return run_impl(suite, cfg, mutate, true);
}

PropertyReport run_suite_serial(const std::string& suite, const SamplerConfig& cfg, bool mutate) {
  return run_impl(suite, cfg, mutate, false);
}

void write_report(std::ostream& out, const PropertyReport& rep) {
  out << "suite=" << rep.suite << " trials=" << rep.trials
      << " violations=" << rep.violations.size() << " worst_slack=" << g17(rep.worst_slack)
      << "\n";
  const std::size_t shown = std::min<std::size_t>(rep.violations.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    const Violation& v = rep.violations[i];
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(v.digest));
    out << "violation offset=" << v.offset << " digest=" << hex << " slack=" << g17(v.slack)
        << "\n";
  }
  if (rep.violations.size() > shown)
    out << "violations_omitted=" << rep.violations.size() - shown << "\n";
}

std::uint64_t fnv_digest(const std::vector<double>& values) {
  std::uint64_t h = 14695981039346656037ULL;
  for (double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace surprisal
