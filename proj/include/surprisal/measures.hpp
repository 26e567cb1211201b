#pragma once

#include <optional>
#include <vector>

#include "surprisal/spectrum.hpp"

namespace surprisal {

// Dichotomy (p, s): a state spectrum against a full-rank reference on the
// same index set.  sigma_order lists indices by non-increasing ratio p_i/s_i,
// ties broken by ascending original index; curves, approximations and the
// smoothed quantities all work in that order.
struct Dichotomy {
  Spectrum p;
  Spectrum s;
  std::vector<int> sigma_order;

  int dim() const { return p.dim(); }
  // p and s at the k-th position of the sigma order (k = 0 is the largest ratio).
  double p_at(int k) const { return p[sigma_order[static_cast<std::size_t>(k)]]; }
  double s_at(int k) const { return s[sigma_order[static_cast<std::size_t>(k)]]; }
  double ratio_at(int k) const { return p_at(k) / s_at(k); }
};

Dichotomy make_dichotomy(Spectrum p, Spectrum s);
Dichotomy uniform_reference(Spectrum p);

// All logarithms are base 2.
struct MeasureSet {
  double S;     // relative entropy S(p||s)
  double V;     // relative variance
  double L;     // second moment of the relative surprisal
  double smin;  // min relative entropy, -log sum_{p_i>0} s_i
  double smax;  // max relative entropy, log max_{p_i>0} p_i/s_i
};

MeasureSet measures(const Dichotomy& d);

// Renyi entropy of order alpha >= 0 in bits; alpha = 1 is Shannon, alpha may
// be +infinity (min-entropy).
double renyi_entropy(const Spectrum& p, double alpha);

// Cumulants (orders 1..max_order, max 16) of the surprisal -log2 p under p,
// computed from central-moment sums.  kappa[0] is the Shannon entropy,
// kappa[1] the varentropy.
std::vector<double> surprisal_cumulants(const Spectrum& p, int max_order);

// Schur-concave monotone M_x(p||s) = V + (1/ln2 - log2 x - S)^2 with
// x = smin_ref in (0,1], defaulting to the smallest reference eigenvalue.
double monotone_m(const Dichotomy& d, std::optional<double> smin_ref = std::nullopt);

// Maximum-varentropy spectrum (1-r, r/(d-1), ..., r/(d-1)); r solves
// (1-2r) ln(((1-r)/r)(d-1)) = 2 by bisection on (1e-15, 0.5-1e-15).
Spectrum max_variance_spectrum(int dim);

Dichotomy tensor(const Dichotomy& a, const Dichotomy& b);
Dichotomy iid_power(const Dichotomy& d, int n);

// Mutual information in bits of a joint spectrum laid out row-major over
// dim1 x dim2.
double mutual_information(const Spectrum& joint, int dim1, int dim2);

Spectrum marginal_first(const Spectrum& joint, int dim1, int dim2);
Spectrum marginal_second(const Spectrum& joint, int dim1, int dim2);

}  // namespace surprisal
