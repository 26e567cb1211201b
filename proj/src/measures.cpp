#include "surprisal/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <quadmath.h>
#include <numeric>
#include <string>

namespace surprisal {

namespace {

constexpr double kLog2E = std::numbers::log2e;  // 1/ln2

std::vector<int> sigma_order_of(const Spectrum& p, const Spectrum& s) {
  std::vector<int> order(static_cast<std::size_t>(p.dim()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return p[a] / s[a] > p[b] / s[b]; });
  return order;
}

}  // namespace

Dichotomy make_dichotomy(Spectrum p, Spectrum s) {
  if (p.dim() != s.dim())
    fail(errc::dimension_mismatch,
         "p dim " + std::to_string(p.dim()) + " vs s dim " + std::to_string(s.dim()));
  for (int i = 0; i < s.dim(); ++i)
    if (!(s[i] > 0.0))
      fail(errc::reference_not_full_rank, "reference entry " + std::to_string(i) + " is zero");
  auto order = sigma_order_of(p, s);
  return Dichotomy{std::move(p), std::move(s), std::move(order)};
}

Dichotomy uniform_reference(Spectrum p) {
  Spectrum s = uniform_spectrum(p.dim());
  return make_dichotomy(std::move(p), std::move(s));
}

MeasureSet measures(const Dichotomy& d) {
  double S = 0.0, L = 0.0, supp_ref = 0.0;
  double smax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < d.dim(); ++i) {
    double pi = d.p[i];
    if (pi <= 0.0) continue;
    double ll = std::log2(pi / d.s[i]);
    S += pi * ll;
    L += pi * ll * ll;
    smax = std::max(smax, ll);
    supp_ref += d.s[i];
  }
  double V = std::max(L - S * S, 0.0);
  double smin = -std::log2(supp_ref) + 0.0;  // +0.0 keeps full support away from -0
  return MeasureSet{S, V, L, smin, smax};
}

double renyi_entropy(const Spectrum& p, double alpha) {
  if (std::isnan(alpha) || alpha < 0.0)
    fail(errc::negative_alpha, "alpha = " + std::to_string(alpha));
  if (alpha == 0.0) {
    int supp = 0;
    for (int i = 0; i < p.dim(); ++i)
      if (p[i] > 0.0) ++supp;
    return std::log2(static_cast<double>(supp));
  }
  if (alpha == 1.0) return shannon_entropy(p);
  if (std::isinf(alpha)) {
    double pmax = 0.0;
    for (int i = 0; i < p.dim(); ++i) pmax = std::max(pmax, p[i]);
    return -std::log2(pmax);
  }
  // log2(sum p^alpha) / (1 - alpha), with the sum accumulated in __float128
  // and the log1p argument formed there as well.  Near alpha = 1 the "- 1"
  // cancels almost the whole significand, and for alpha well above 1 the
  // argument sits next to -1, where noise gets amplified by 1 / (sum
  // p^alpha); the spectrum reconstruction needs the returned double to be
  // quantization-limited because its inverse problem amplifies entropy noise
  // by several more orders.
  __float128 acc = 0;
  const __float128 a = static_cast<__float128>(alpha);
  for (int i = 0; i < p.dim(); ++i)
    if (p[i] > 0.0) acc += powq(static_cast<__float128>(p[i]), a);
  return static_cast<double>(log1pq(acc - 1) / logq(__float128(2)) / (1 - a));
}

std::vector<double> surprisal_cumulants(const Spectrum& p, int max_order) {
  if (max_order < 1 || max_order > 16)
    fail(errc::out_of_range, "max_order must be in [1,16]");
  double mu = 0.0;
  for (int i = 0; i < p.dim(); ++i)
    if (p[i] > 0.0) mu -= p[i] * std::log2(p[i]);
  // central moments of the surprisal
  std::vector<double> c(static_cast<std::size_t>(max_order) + 1, 0.0);
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] <= 0.0) continue;
    double x = -std::log2(p[i]) - mu;
    double pw = 1.0;
    for (int k = 1; k <= max_order; ++k) {
      pw *= x;
      c[static_cast<std::size_t>(k)] += p[i] * pw;
    }
  }
  // binomial table
  std::vector<std::vector<double>> binom(static_cast<std::size_t>(max_order) + 1);
  for (int n = 0; n <= max_order; ++n) {
    binom[n].assign(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  // cumulants of the centered variable via kappa_n = c_n - sum C(n-1,k-1) kappa_k c_{n-k},
  // then the first cumulant is restored to the mean
  std::vector<double> kappa(static_cast<std::size_t>(max_order) + 1, 0.0);
  kappa[1] = c[1];
  for (int n = 2; n <= max_order; ++n) {
    double acc = c[static_cast<std::size_t>(n)];
    for (int k = 1; k < n; ++k)
      acc -= binom[n - 1][k - 1] * kappa[static_cast<std::size_t>(k)] *
             c[static_cast<std::size_t>(n - k)];
    kappa[static_cast<std::size_t>(n)] = acc;
  }
  std::vector<double> out(static_cast<std::size_t>(max_order));
  out[0] = mu;
  for (int n = 2; n <= max_order; ++n) out[static_cast<std::size_t>(n - 1)] = kappa[n];
  return out;
}

double monotone_m(const Dichotomy& d, std::optional<double> smin_ref) {
  double x;
  if (smin_ref) {
    x = *smin_ref;
  } else {
    x = d.s[0];
    for (int i = 1; i < d.dim(); ++i) x = std::min(x, d.s[i]);
  }
  if (!(x > 0.0) || x > 1.0)
    fail(errc::invalid_reference_eigenvalue, "smin_ref = " + std::to_string(x));
  MeasureSet m = measures(d);
  double t = kLog2E - std::log2(x) - m.S;
  return m.V + t * t;
}

Spectrum max_variance_spectrum(int dim) {
  if (dim < 2) fail(errc::dimension_too_small, "dim must be at least 2");
  const double dm1 = static_cast<double>(dim - 1);
  auto g = [dm1](double r) { return (1.0 - 2.0 * r) * std::log(((1.0 - r) / r) * dm1) - 2.0; };
  double lo = 1e-15, hi = 0.5 - 1e-15;
  // g decreases from +inf to -2 on the bracket
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  double r = 0.5 * (lo + hi);
  std::vector<double> v(static_cast<std::size_t>(dim), r / dm1);
  v[0] = 1.0 - r;
  return Spectrum{std::move(v)};
}

Dichotomy tensor(const Dichotomy& a, const Dichotomy& b) {
  std::size_t na = static_cast<std::size_t>(a.dim());
  std::size_t nb = static_cast<std::size_t>(b.dim());
  if (na * nb > dimension_cap())
    fail(errc::dimension_cap_exceeded,
         std::to_string(na * nb) + " entries exceed cap " + std::to_string(dimension_cap()));
  std::vector<double> p(na * nb), s(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      p[i * nb + j] = a.p.values[i] * b.p.values[j];
      s[i * nb + j] = a.s.values[i] * b.s.values[j];
    }
  return make_dichotomy(Spectrum{std::move(p)}, Spectrum{std::move(s)});
}

Dichotomy iid_power(const Dichotomy& d, int n) {
  if (n < 0) fail(errc::out_of_range, "power must be nonnegative");
  Dichotomy acc = make_dichotomy(Spectrum{{1.0}}, Spectrum{{1.0}});
  for (int i = 0; i < n; ++i) acc = tensor(acc, d);
  return acc;
}

Spectrum marginal_first(const Spectrum& joint, int dim1, int dim2) {
  if (joint.dim() != dim1 * dim2)
    fail(errc::dimension_mismatch, "joint dim " + std::to_string(joint.dim()) + " is not " +
                                       std::to_string(dim1) + "*" + std::to_string(dim2));
  std::vector<double> m(static_cast<std::size_t>(dim1), 0.0);
  for (int i = 0; i < dim1; ++i)
    for (int j = 0; j < dim2; ++j) m[static_cast<std::size_t>(i)] += joint[i * dim2 + j];
  return Spectrum{std::move(m)};
}

Spectrum marginal_second(const Spectrum& joint, int dim1, int dim2) {
  if (joint.dim() != dim1 * dim2)
    fail(errc::dimension_mismatch, "joint dim " + std::to_string(joint.dim()) + " is not " +
                                       std::to_string(dim1) + "*" + std::to_string(dim2));
  std::vector<double> m(static_cast<std::size_t>(dim2), 0.0);
  for (int i = 0; i < dim1; ++i)
    for (int j = 0; j < dim2; ++j) m[static_cast<std::size_t>(j)] += joint[i * dim2 + j];
  return Spectrum{std::move(m)};
}

double mutual_information(const Spectrum& joint, int dim1, int dim2) {
  Spectrum m1 = marginal_first(joint, dim1, dim2);
  Spectrum m2 = marginal_second(joint, dim1, dim2);
  double i12 = shannon_entropy(m1) + shannon_entropy(m2) - shannon_entropy(joint);
  return std::max(i12, 0.0);
}

}  // namespace surprisal
