#pragma once

#include <vector>

#include "surprisal/spectrum.hpp"

namespace surprisal {

// Power sums of the spectrum, sums[k] = sum_i p_i^k for k >= 1 with
// sums[1] = 1 implicit; sums[0] holds the dimension.
struct PowerSums {
  std::vector<double> sums;

  int dim() const { return static_cast<int>(sums.size()) - 1; }
};

// Converts base-2 Renyi entropies S_2, ..., S_d of a d-dimensional spectrum
// into power sums via P_k = 2^{(1-k) S_k}.  `renyi` holds d-1 entries in
// ascending order of k.  Entries outside [0, log2 d] are rejected
// (out_of_range): no spectrum attains them.
PowerSums power_sums_from_renyi(const std::vector<double>& renyi);

// Girard-Newton recursion, elementary symmetric polynomials e_0..e_d from
// power sums: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} P_i.
std::vector<double> newton_girard(const PowerSums& ps);

// Monic characteristic polynomial, coefficients ascending in the exponent:
// c[j] is the coefficient of x^j, c[d] = 1, c[d-k] = (-1)^k e_k.
std::vector<double> char_poly(const std::vector<double>& elementary);

// All real roots of a monic polynomial, via simultaneous Durand-Kerner
// iteration from starting points (0.4 + 0.9i)^j.  Root clusters (the
// conjugate splatter a multiple root decays into) are collapsed to their
// centroid, where the first-order splatter cancels; a root of multiplicity m
// and residual tolerance tau is located to about tau^(2/m) instead of the
// tau^(1/m) of its individual cluster members.  Imaginary parts up to
// 1e-7 are truncated and roots are clamped to [0,1] within the same slack;
// larger imaginary content throws complex_roots, a stalled iteration
// (10^4 sweeps without residual < 1e-12) throws no_convergence.
std::vector<double> poly_roots(const std::vector<double>& coeffs);

// Recovers the spectrum of dimension dim from its base-2 Renyi entropies of
// orders 2..dim (uniqueness includes multiplicities).  Output is sorted
// descending and renormalized; the recovered power sums are checked against
// the inputs, mismatch throws complex_roots.
Spectrum spectrum_from_renyi(const std::vector<double>& renyi, int dim);

}  // namespace surprisal
