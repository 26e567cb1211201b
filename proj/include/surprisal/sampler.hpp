#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "surprisal/measures.hpp"
#include "surprisal/spectrum.hpp"

namespace surprisal {

using Matrix = std::vector<std::vector<double>>;

// Deterministic generator: mt19937_64 with hand-rolled distributions, so the
// sample stream is identical across standard libraries (std::*_distribution
// implementations differ between libstdc++ and libc++).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  double uniform();  // [0, 1), 53-bit
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal();                  // Box-Muller
  double gamma(double shape);       // Marsaglia-Tsang, unit scale

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 mix of (seed, offset); trial streams are independent and any
// trial can be regenerated without replaying its predecessors.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t offset);
Rng trial_rng(std::uint64_t seed, std::uint64_t offset);

// Dirichlet(concentration) spectrum; min_entry > 0 requests a floor on every
// entry (rejection, then a blend toward uniform if the floor is tight).
Spectrum sample_spectrum(Rng& rng, int dim, double concentration, double min_entry = 0.0);

// State Dirichlet(concentration), full-rank reference with entries >= ref_floor.
Dichotomy sample_dichotomy(Rng& rng, int dim, double concentration, double ref_floor);

// Row-stochastic matrix, rows Dirichlet(1), shape dim_from x dim_to.
Matrix sample_stochastic(Rng& rng, int dim_from, int dim_to);

// Doubly stochastic matrix: Dirichlet(1)-weighted mixture of k uniformly
// random permutation matrices.
Matrix sample_bistochastic(Rng& rng, int dim, int k_permutations = 8);

// Row vector through the matrix, y_j = sum_i x_i m[i][j].
std::vector<double> push_through(const std::vector<double>& x, const Matrix& m);

// Both halves of the dichotomy through the same channel.
Dichotomy evolve(const Dichotomy& d, const Matrix& m);

// Kronecker product of two spectra, row-major.
Spectrum kron(const Spectrum& a, const Spectrum& b);

}  // namespace surprisal
