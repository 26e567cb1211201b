#include "surprisal/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace surprisal {

namespace {

constexpr double kLog2E = std::numbers::log2e;

double smallest_reference(const Dichotomy& d) {
  double x = d.s[0];
  for (int i = 1; i < d.dim(); ++i) x = std::min(x, d.s[i]);
  return x;
}

}  // namespace

SufficiencyVerdict sufficient_condition(const Dichotomy& from, const Dichotomy& to, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in (0,1)");
  MeasureSet mf = measures(from);
  MeasureSet mt = measures(to);
  double factor = 2.0 / eps - 1.0;
  double lhs = mf.S - std::sqrt(mf.V * factor);
  double rhs = mt.S + std::sqrt(mt.V * factor);
  double delta = mf.S - mt.S;
  double certified = std::numeric_limits<double>::infinity();
  if (delta > 0.0) {
    double root_sum = std::sqrt(mf.V) + std::sqrt(mt.V);
    certified = 2.0 * root_sum * root_sum / (delta * delta);
  }
  return SufficiencyVerdict{lhs >= rhs, lhs, rhs, certified};
}

double iid_error_bound(const Dichotomy& from, const Dichotomy& to, double n) {
  if (!(n >= 1.0)) fail(errc::out_of_range, "n must be at least 1");
  MeasureSet mf = measures(from);
  MeasureSet mt = measures(to);
  double delta = mf.S - mt.S;
  if (!(delta > 0.0))
    fail(errc::nonpositive_entropy_gap, "requires S(from) > S(to)");
  double root_sum = std::sqrt(mf.V) + std::sqrt(mt.V);
  double bound = 2.0 * root_sum * root_sum / (n * delta * delta);
  return std::min(bound, 1.0);
}

RateReport iid_rate_bound(const Dichotomy& from, const Dichotomy& to, double n, double eps_n) {
  if (!(n >= 1.0)) fail(errc::out_of_range, "n must be at least 1");
  if (!(eps_n > 0.0 && eps_n < 1.0)) fail(errc::invalid_epsilon, "eps_n must lie in (0,1)");
  MeasureSet mf = measures(from);
  MeasureSet mt = measures(to);
  if (!(mt.S > 0.0)) fail(errc::nonpositive_entropy_gap, "requires S(to) > 0");
  double pref = (2.0 - eps_n) / (eps_n * n);
  double k = pref * mf.V / (mt.S * mt.S);
  double kp = pref * mt.V / (mt.S * mt.S);
  double r = mf.S / mt.S;
  RateReport rep{n, eps_n, false, 0.0, -std::sqrt(k) + std::sqrt(r * kp), k, kp};
  double c = r - std::sqrt(k);
  if (c > 0.0) {
    rep.feasible = true;
    double root = 0.5 * (-std::sqrt(kp) + std::sqrt(kp + 4.0 * c));
    rep.rate_lower = root * root;
  }
  return rep;
}

ProductionBound entropy_production_bound(const Dichotomy& from, const Dichotomy& to) {
  MeasureSet mf = measures(from);
  MeasureSet mt = measures(to);
  double delta_s = mf.S - mt.S;
  double delta_v = mf.V - mt.V;
  double bound = delta_v / (2.0 * std::sqrt(monotone_m(from)));
  return ProductionBound{delta_s, delta_v, bound, delta_s >= bound - 1e-12};
}

double marginal_k_const(double smin, double d_joint) {
  double ls = std::log2(smin);
  double ld = std::log2(d_joint);
  return std::sqrt(2.0 * std::numbers::ln2) * (12.0 + ls * ls + 8.0 * ld * ld);
}

double mutual_info_penalty(double x) {
  if (!(x >= 0.0)) fail(errc::out_of_range, "penalty argument must be nonnegative");
  return std::max(std::sqrt(x), std::pow(x, 0.25));
}

MarginalBudget marginal_budget(const Spectrum& joint_final, int dim_s, int dim_e,
                               const Dichotomy& from_s, const Dichotomy& from_e,
                               const Spectrum& ref_s, const Spectrum& ref_e) {
  if (from_s.dim() != dim_s || from_e.dim() != dim_e)
    fail(errc::dimension_mismatch, "initial dichotomies must match dims");
  if (ref_s.dim() != dim_s || ref_e.dim() != dim_e)
    fail(errc::dimension_mismatch, "final references must match dims");
  Spectrum final_s = marginal_first(joint_final, dim_s, dim_e);
  Spectrum final_e = marginal_second(joint_final, dim_s, dim_e);
  MeasureSet ms0 = measures(from_s);
  MeasureSet me0 = measures(from_e);
  MeasureSet ms1 = measures(make_dichotomy(final_s, ref_s));
  MeasureSet me1 = measures(make_dichotomy(final_e, ref_e));

  Dichotomy product = tensor(from_s, from_e);
  double smin = smallest_reference(product);
  double m_from = monotone_m(product, smin);
  double info = mutual_information(joint_final, dim_s, dim_e);
  double k = marginal_k_const(smin, static_cast<double>(dim_s) * dim_e);

  double lhs = (ms0.S - ms1.S) + (me0.S - me1.S);
  double rhs = ((ms0.V - ms1.V) + (me0.V - me1.V) - k * mutual_info_penalty(info)) /
               (2.0 * std::sqrt(m_from));
  return MarginalBudget{lhs, rhs, info, k, m_from};
}

LandauerReport landauer(const Spectrum& p, int n_max) {
  if (n_max < 0 || n_max > 40) fail(errc::out_of_range, "n_max must lie in [0,40]");
  const int dim = p.dim();
  if (static_cast<std::size_t>(dim) * (static_cast<std::size_t>(1) << n_max) > dimension_cap())
    fail(errc::dimension_cap_exceeded, "dim * 2^n_max exceeds the dimension cap");

  Dichotomy unital = uniform_reference(p);
  MeasureSet m = measures(unital);
  double entropy = std::log2(static_cast<double>(dim)) - m.S;  // Shannon entropy of p
  double n_bound = entropy + m.V / (2.0 * std::sqrt(monotone_m(unital)));

  std::vector<double> sorted = p.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  std::vector<double> prefix(sorted.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    acc += sorted[k];
    prefix[k] = acc;
  }
  prefix.back() = 1.0;

  LandauerReport rep{std::nullopt, n_bound};
  for (int n = 0; n <= n_max; ++n) {
    double total = static_cast<double>(dim) * std::exp2(n);
    // initial: p (x) pure battery, final: pure system (x) uniform battery;
    // both spectra are block-structured, so the curves are assembled directly
    std::vector<std::pair<double, double>> init_pts{{0.0, 0.0}};
    for (int k = 0; k < dim; ++k)
      init_pts.emplace_back((k + 1) / total, prefix[static_cast<std::size_t>(k)]);
    if (init_pts.back().first < 1.0) init_pts.emplace_back(1.0, 1.0);
    LorenzCurve init = make_lorenz_curve(std::move(init_pts));

    std::vector<std::pair<double, double>> final_pts{{0.0, 0.0}};
    final_pts.emplace_back(1.0 / dim, 1.0);
    if (dim > 1) final_pts.emplace_back(1.0, 1.0);
    LorenzCurve fin = make_lorenz_curve(std::move(final_pts));

    if (dominates(init, fin).decision) {
      rep.n_exact = n;
      break;
    }
  }
  return rep;
}

double catalyst_bound(double delta, int dim_s, int dim_e, double m_from) {
  if (!(delta >= 0.0 && delta <= 1.0)) fail(errc::invalid_delta, "delta must lie in [0,1]");
  if (dim_s < 1 || dim_e < 1 || dim_s * dim_e < 2)
    fail(errc::dimension_too_small, "joint dimension must be at least 2");
  if (!(m_from >= 0.0)) fail(errc::out_of_range, "m_from must be nonnegative");
  double d_joint = static_cast<double>(dim_s) * dim_e;
  double k = marginal_k_const(1.0 / d_joint, d_joint);
  return 2.0 * std::sqrt(m_from) * delta + k * mutual_info_penalty(delta);
}

}  // namespace surprisal
