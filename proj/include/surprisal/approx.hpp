#pragma once

#include <optional>

#include "surprisal/measures.hpp"

namespace surprisal {

enum class ApproxKind { flat, steep };

// Result of an eps-ball approximation.  The spectrum is reported in the
// original index order; the block indices refer to 1-based positions in the
// sigma order of the input dichotomy.
struct ApproxState {
  Spectrum spectrum;
  double eps;
  ApproxKind kind;
  // flat: head block 1..m and tail block n..d were rescaled
  int m = 0;
  int n = 0;
  // steep: entries beyond r_index were zeroed, zeroed_mass of state mass removed there
  int r_index = 0;
  double zeroed_mass = 0.0;
};

// Flattest state of the closed eps-trace-distance ball around p: its Lorenz
// curve is dominated by the curve of every other ball member.  eps in [0,1].
ApproxState flat_approximation(const Dichotomy& d, double eps);

// Steepest useful ball member: boosts the top-ratio entry by eps and zeroes
// the corresponding tail mass.  eps in [0,1].
ApproxState steep_approximation(const Dichotomy& d, double eps);

// Cantelli envelope slopes r = 2^(S -+ f) with f = sqrt(V (1/eps - 1)):
// curve(steep(d,eps)) >= min(r_steep x, 1) and curve(flat(d,eps)) <= min(r_flat x, 1).
struct Envelopes {
  double r_steep;
  double r_flat;
  double f_sigma;
};

Envelopes cantelli_envelopes(const Dichotomy& d, double eps);

struct SmoothedBounds {
  double smax_eps;        // exact smoothed max relative entropy (flat construction)
  double smin_eps_lower;  // steep-construction lower bound on the smoothed min entropy
  double f_sigma;         // sqrt(V (1/eps - 1))
  std::optional<double> smin_eps_exact;  // subset-exact value, dim <= 16 only
};

// Smoothed divergences at smoothing eps in (0,1).  The exact smoothed min
// entropy enumerates supports and is computed automatically for dim <= 16;
// require_exact makes a larger dimension an error instead of a silent skip.
SmoothedBounds smoothed_divergences(const Dichotomy& d, double eps, bool require_exact = false);

// Exact smoothed min relative entropy by subset enumeration (dim <= 16):
// maximize -log2 sum_{i in A} s_i over supports A with sum_{i not in A} p_i <= eps.
double smin_exact(const Dichotomy& d, double eps);         // OpenMP over subsets
double smin_exact_serial(const Dichotomy& d, double eps);  // reference implementation

}  // namespace surprisal
