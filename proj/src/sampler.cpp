#include "surprisal/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "surprisal/errors.hpp"

namespace surprisal {

double Rng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) fail(errc::out_of_range, "empty integer range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) fail(errc::out_of_range, "gamma shape must be positive");
  if (shape < 1.0) {
    const double u = std::max(uniform(), 0x1.0p-60);
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = std::max(uniform(), 0x1.0p-60);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t offset) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (offset + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng trial_rng(std::uint64_t seed, std::uint64_t offset) { return Rng(mix_seed(seed, offset)); }

Spectrum sample_spectrum(Rng& rng, int dim, double concentration, double min_entry) {
  if (dim < 1) fail(errc::dimension_too_small, "spectrum dimension must be positive");
  if (min_entry < 0.0 || min_entry * dim > 1.0 + 1e-12)
    fail(errc::out_of_range, "entry floor must lie in [0, 1/dim]");
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (int attempt = 0; attempt < 200; ++attempt) {
    double total = 0.0;
    for (double& x : v) {
      x = rng.gamma(concentration);
      total += x;
    }
    if (!(total > 0.0)) continue;
    for (double& x : v) x /= total;
    if (*std::min_element(v.begin(), v.end()) >= min_entry) return validate_spectrum(v, 1e-6);
  }
  // Floor too tight for rejection: blend the last draw toward uniform just
  // far enough that every entry clears it.
  const double t = std::min(1.0, min_entry * dim);
  for (double& x : v) x = (1.0 - t) * x + t / dim;
  return validate_spectrum(v, 1e-6);
}

Dichotomy sample_dichotomy(Rng& rng, int dim, double concentration, double ref_floor) {
  Spectrum p = sample_spectrum(rng, dim, concentration);
  Spectrum s = sample_spectrum(rng, dim, concentration, std::max(ref_floor, 1e-12));
  return make_dichotomy(std::move(p), std::move(s));
}

Matrix sample_stochastic(Rng& rng, int dim_from, int dim_to) {
  if (dim_from < 1 || dim_to < 1) fail(errc::dimension_too_small, "matrix dims must be positive");
  Matrix m(static_cast<std::size_t>(dim_from));
  for (auto& row : m) row = sample_spectrum(rng, dim_to, 1.0).values;
  return m;
}

Matrix sample_bistochastic(Rng& rng, int dim, int k_permutations) {
  if (dim < 1) fail(errc::dimension_too_small, "matrix dim must be positive");
  const int k = std::max(1, k_permutations);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& x : w) {
    x = rng.gamma(1.0);
    total += x;
  }
  for (double& x : w) x /= total;

  Matrix m(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  std::vector<int> perm(static_cast<std::size_t>(dim));
  for (int j = 0; j < k; ++j) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    for (int i = 0; i < dim; ++i)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] +=
          w[static_cast<std::size_t>(j)];
  }
  return m;
}

std::vector<double> push_through(const std::vector<double>& x, const Matrix& m) {
  if (x.size() != m.size()) fail(errc::dimension_mismatch, "vector/matrix shape mismatch");
  if (m.empty()) fail(errc::empty_input, "empty matrix");
  const std::size_t cols = m.front().size();
  std::vector<double> out(cols, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) fail(errc::dimension_mismatch, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) out[j] += x[i] * m[i][j];
  }
  return out;
}

Dichotomy evolve(const Dichotomy& d, const Matrix& m) {
  return make_dichotomy(validate_spectrum(push_through(d.p.values, m), 1e-6),
                        validate_spectrum(push_through(d.s.values, m), 1e-6));
}

Spectrum kron(const Spectrum& a, const Spectrum& b) {
  const std::size_t total = a.values.size() * b.values.size();
  if (total > dimension_cap())
    fail(errc::dimension_cap_exceeded, "tensor dimension " + std::to_string(total) + " above cap");
  std::vector<double> v;
  v.reserve(total);
  for (double x : a.values)
    for (double y : b.values) v.push_back(x * y);
  return Spectrum{std::move(v)};
}

}  // namespace surprisal
