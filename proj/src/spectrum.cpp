#include "surprisal/spectrum.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace surprisal {

Spectrum validate_spectrum(std::vector<double> values, double tol) {
  if (values.empty()) fail(errc::empty_input, "spectrum has no entries");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (v < -tol)
      fail(errc::negative_entry,
           "entry " + std::to_string(i) + " = " + std::to_string(v) + " below -tol");
    if (v < 0.0) values[i] = 0.0;
    sum += values[i];
  }
  if (std::abs(sum - 1.0) > tol)
    fail(errc::not_normalized, "entries sum to " + std::to_string(sum));
  for (auto& v : values) v /= sum;
  return Spectrum{std::move(values)};
}

Spectrum uniform_spectrum(int dim) {
  if (dim < 1) fail(errc::dimension_too_small, "dim must be at least 1");
  return Spectrum{std::vector<double>(static_cast<std::size_t>(dim), 1.0 / dim)};
}

double trace_distance(const Spectrum& a, const Spectrum& b) {
  if (a.dim() != b.dim())
    fail(errc::dimension_mismatch,
         "dims " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

double shannon_entropy(const Spectrum& p) {
  double h = 0.0;
  for (int i = 0; i < p.dim(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  return h;
}

std::size_t dimension_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("SURPRISAL_DIM_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1) << 20;
  }();
  return cap;
}

}  // namespace surprisal
