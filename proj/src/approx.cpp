#include "surprisal/approx.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace surprisal {

namespace {

void check_eps_closed(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) fail(errc::invalid_epsilon, "eps must lie in [0,1]");
}

std::vector<double> to_original_order(const Dichotomy& d, const std::vector<double>& sorted) {
  std::vector<double> out(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    out[static_cast<std::size_t>(d.sigma_order[k])] = sorted[k];
  return out;
}

}  // namespace

ApproxState flat_approximation(const Dichotomy& d, double eps) {
  check_eps_closed(eps);
  const int dim = d.dim();
  if (dim == 1) return ApproxState{d.p, eps, ApproxKind::flat, 0, 0};
  if (trace_distance(d.p, d.s) < eps)
    return ApproxState{d.s, eps, ApproxKind::flat, 0, 0};

  std::vector<double> ps(static_cast<std::size_t>(dim)), ss(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    ps[static_cast<std::size_t>(k)] = d.p_at(k);
    ss[static_cast<std::size_t>(k)] = d.s_at(k);
  }
  // prefix sums over positions 1..dim in sigma order
  std::vector<double> head_p(static_cast<std::size_t>(dim) + 1, 0.0);
  std::vector<double> head_s(static_cast<std::size_t>(dim) + 1, 0.0);
  for (int k = 1; k <= dim; ++k) {
    head_p[k] = head_p[k - 1] + ps[k - 1];
    head_s[k] = head_s[k - 1] + ss[k - 1];
  }
  auto tail_p = [&](int k) { return head_p[dim] - head_p[k - 1]; };
  auto tail_s = [&](int k) { return head_s[dim] - head_s[k - 1]; };
  auto ratio = [&](int k) { return ps[k - 1] / ss[k - 1]; };

  // m: smallest index whose head block can shed eps without breaking the order
  int m = 0;
  for (int k = 1; k <= dim - 1; ++k) {
    if (eps <= head_p[k] - ratio(k + 1) * head_s[k]) {
      m = k;
      break;
    }
  }
  // n: largest index whose tail block can absorb eps
  int n = 0;
  for (int k = dim; k >= 2; --k) {
    if (eps <= ratio(k - 1) * tail_s(k) - tail_p(k)) {
      n = k;
      break;
    }
  }
  // both exist whenever eps <= trace distance; roundoff at the closed-ball
  // boundary can only push the answer to the reference itself
  if (m == 0 || n == 0 || m >= n)
    return ApproxState{d.s, eps, ApproxKind::flat, 0, 0};

  std::vector<double> out = ps;
  double head_scale = (head_p[m] - eps) / head_s[m];
  for (int k = 1; k <= m; ++k) out[k - 1] = ss[k - 1] * head_scale;
  double tail_scale = (tail_p(n) + eps) / tail_s(n);
  for (int k = n; k <= dim; ++k) out[k - 1] = ss[k - 1] * tail_scale;

  Spectrum spectrum = validate_spectrum(to_original_order(d, out));
  return ApproxState{std::move(spectrum), eps, ApproxKind::flat, m, n};
}

ApproxState steep_approximation(const Dichotomy& d, double eps) {
  check_eps_closed(eps);
  const int dim = d.dim();
  if (dim == 1) return ApproxState{d.p, eps, ApproxKind::steep, 0, 0, 1, 0.0};

  std::vector<double> ps(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) ps[static_cast<std::size_t>(k)] = d.p_at(k);
  double rest = 1.0 - ps[0];
  if (eps > rest) {
    // everything collapses onto the top-ratio entry
    std::vector<double> out(static_cast<std::size_t>(dim), 0.0);
    out[0] = 1.0;
    Spectrum spectrum{to_original_order(d, out)};
    return ApproxState{std::move(spectrum), eps, ApproxKind::steep, 0, 0, 1, rest};
  }

  std::vector<double> tail(static_cast<std::size_t>(dim) + 2, 0.0);
  for (int k = dim; k >= 1; --k) tail[k] = tail[k + 1] + ps[k - 1];
  int r_index = dim;
  for (int k = dim; k >= 2; --k) {
    if (tail[k] >= eps) {
      r_index = k;
      break;
    }
  }
  double zeroed = tail[r_index + 1];
  std::vector<double> out = ps;
  out[0] += eps;
  out[static_cast<std::size_t>(r_index - 1)] -= eps - zeroed;
  for (int k = r_index + 1; k <= dim; ++k) out[static_cast<std::size_t>(k - 1)] = 0.0;

  Spectrum spectrum = validate_spectrum(to_original_order(d, out));
  return ApproxState{std::move(spectrum), eps, ApproxKind::steep, 0, 0, r_index, zeroed};
}

Envelopes cantelli_envelopes(const Dichotomy& d, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in (0,1)");
  MeasureSet m = measures(d);
  double f = std::sqrt(m.V * (1.0 / eps - 1.0));
  return Envelopes{std::exp2(m.S - f), std::exp2(m.S + f), f};
}

double smin_exact_serial(const Dichotomy& d, double eps) {
  const int dim = d.dim();
  if (dim > 16) fail(errc::exact_search_too_large, "subset search limited to dim <= 16");
  if (!(eps >= 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in [0,1)");
  const unsigned long masks = 1ul << dim;
  double best = 1.0;  // full support is always feasible
  for (unsigned long a = 1; a < masks; ++a) {
    double dropped = 0.0, weight = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (a & (1ul << i))
        weight += d.s[i];
      else
        dropped += d.p[i];
    }
    if (dropped <= eps + 1e-12 && weight < best) best = weight;
  }
  return -std::log2(best) + 0.0;
}

double smin_exact(const Dichotomy& d, double eps) {
  const int dim = d.dim();
  if (dim > 16) fail(errc::exact_search_too_large, "subset search limited to dim <= 16");
  if (!(eps >= 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in [0,1)");
  const long masks = 1l << dim;
  double best = 1.0;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (long a = 1; a < masks; ++a) {
    double dropped = 0.0, weight = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (a & (1l << i))
        weight += d.s[i];
      else
        dropped += d.p[i];
    }
    if (dropped <= eps + 1e-12 && weight < best) best = weight;
  }
  return -std::log2(best) + 0.0;
}

SmoothedBounds smoothed_divergences(const Dichotomy& d, double eps, bool require_exact) {
  if (!(eps > 0.0 && eps < 1.0)) fail(errc::invalid_epsilon, "eps must lie in (0,1)");
  MeasureSet base = measures(d);
  ApproxState flat = flat_approximation(d, eps);
  ApproxState steep = steep_approximation(d, eps);
  double smax_eps = measures(make_dichotomy(flat.spectrum, d.s)).smax;
  double smin_lower = measures(make_dichotomy(steep.spectrum, d.s)).smin;
  double f = std::sqrt(base.V * (1.0 / eps - 1.0));
  SmoothedBounds out{smax_eps, smin_lower, f, std::nullopt};
  if (d.dim() <= 16)
    out.smin_eps_exact = smin_exact(d, eps);
  else if (require_exact)
    fail(errc::exact_search_too_large, "exact smoothing requested for dim > 16");
  return out;
}

}  // namespace surprisal
