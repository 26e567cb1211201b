#pragma once

#include <cstddef>
#include <vector>

#include "surprisal/errors.hpp"

namespace surprisal {

// Classical spectrum: a probability vector kept in its given index order
// (never implicitly sorted).
struct Spectrum {
  std::vector<double> values;

  int dim() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

// Validates raw values and returns a normalized Spectrum.  Entries in
// [-tol, 0) are clamped to zero, entries below -tol throw negative_entry.
// The sum must be 1 within tol (not_normalized otherwise); afterwards the
// vector is rescaled so it sums to 1 exactly up to roundoff.
Spectrum validate_spectrum(std::vector<double> values, double tol = 1e-9);

Spectrum uniform_spectrum(int dim);

// Total variation distance (1/2) * sum_i |a_i - b_i|.
double trace_distance(const Spectrum& a, const Spectrum& b);

// Shannon entropy in bits; zero entries contribute zero.
double shannon_entropy(const Spectrum& p);

// Guard for tensor-product sizes, default 2^20 entries.  The environment
// variable SURPRISAL_DIM_CAP overrides the default.
std::size_t dimension_cap();

}  // namespace surprisal
