#include "surprisal/spectral.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "surprisal/errors.hpp"

namespace surprisal {

namespace {

// The inverse problem (roots from power sums) can carry Jacobian singular
// values around 1e-12 at dimension 8, so localizing roots to 1e-8 needs the
// moment arithmetic good to ~1e-20.  Long double is not enough; the moment
// side of the pipeline runs in __float128.  The Durand-Kerner point cloud
// only has to reveal the cluster structure and provide starting values, so
// root iteration stays in long double where it is cheap.
using qf = __float128;
using cld = std::complex<long double>;

qf qpowi(qf x, int k) {
  qf acc = 1;
  for (int i = 0; i < k; ++i) acc *= x;
  return acc;
}

std::vector<qf> elementary_from_sums(const std::vector<qf>& sums) {
  const int d = static_cast<int>(sums.size()) - 1;
  std::vector<qf> e(static_cast<std::size_t>(d) + 1, qf(0));
  e[0] = 1;
  for (int k = 1; k <= d; ++k) {
    qf acc = 0;
    qf sign = 1;
    for (int i = 1; i <= k; ++i) {
      acc += sign * e[static_cast<std::size_t>(k - i)] * sums[static_cast<std::size_t>(i)];
      sign = -sign;
    }
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  return e;
}

std::vector<qf> monic_from_elementary(const std::vector<qf>& e) {
  const int d = static_cast<int>(e.size()) - 1;
  std::vector<qf> c(static_cast<std::size_t>(d) + 1, qf(0));
  for (int j = 0; j <= d; ++j) {
    const int k = d - j;
    c[static_cast<std::size_t>(j)] = (k % 2 == 0 ? qf(1) : qf(-1)) * e[static_cast<std::size_t>(k)];
  }
  return c;
}

cld horner(const std::vector<long double>& c, cld z) {
  cld acc(0.0L, 0.0L);
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

// Durand-Kerner sweep with a stagnation cut-off: near a multiple root the
// update is pure rounding noise long before it reaches the step tolerance.
std::vector<cld> durand_kerner(const std::vector<long double>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  std::vector<cld> z(static_cast<std::size_t>(d));
  const cld seed(0.4L, 0.9L);
  cld acc(1.0L, 0.0L);
  for (auto& zj : z) {
    acc *= seed;
    zj = acc;
  }
  long double best_step = 1e30L;
  int since_improved = 0;
  for (int sweep = 0; sweep < 10000; ++sweep) {
    long double step = 0.0L;
    for (int j = 0; j < d; ++j) {
      cld denom(1.0L, 0.0L);
      for (int k = 0; k < d; ++k)
        if (k != j) denom *= z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)];
      if (denom == cld(0.0L, 0.0L)) {
        z[static_cast<std::size_t>(j)] += cld(1e-10L, 1e-10L);
        continue;
      }
      const cld delta = horner(coeffs, z[static_cast<std::size_t>(j)]) / denom;
      z[static_cast<std::size_t>(j)] -= delta;
      step = std::max(step, std::abs(delta));
    }
    if (step < 1e-16L) break;
    if (step < 0.5L * best_step) {
      best_step = step;
      since_improved = 0;
    } else if (++since_improved > 64) {
      break;
    }
  }
  long double cscale = 0.0L;
  for (long double c : coeffs) cscale = std::max(cscale, std::abs(c));
  for (const auto& root : z)
    if (std::abs(horner(coeffs, root)) >
        static_cast<long double>(1e-12) * std::max(1.0L, cscale))
      fail(errc::no_convergence, "root iteration stalled above residual tolerance");
  return z;
}

struct Cluster {
  std::vector<cld> members;
  qf value = 0;  // representative (centroid, later polished)

  int count() const { return static_cast<int>(members.size()); }
};

long double real_spread(const std::vector<cld>& m) {
  long double lo = 1e30L;
  long double hi = -1e30L;
  for (const auto& z : m) {
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
  }
  return hi - lo;
}

long double imag_spread(const std::vector<cld>& m) {
  long double s = 0.0L;
  for (const auto& z : m) s = std::max(s, std::abs(z.imag()));
  return 2.0L * s;
}

// A genuine k-fold root scatters into a near-regular polygon: real and
// imaginary spreads match.  A cluster that is wide in the real direction but
// flat is two separate real roots the linkage radius glued together; split
// it at the largest real gap.
void split_flat_clusters(std::vector<std::vector<cld>>& groups) {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto& m = groups[g];
    if (m.size() < 2) continue;
    if (real_spread(m) <= 4.0L * imag_spread(m) + 1e-9L) continue;
    std::sort(m.begin(), m.end(),
              [](const cld& a, const cld& b) { return a.real() < b.real(); });
    std::size_t cut = 1;
    long double widest = -1.0L;
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
      const long double gap = m[i + 1].real() - m[i].real();
      if (gap > widest) {
        widest = gap;
        cut = i + 1;
      }
    }
    std::vector<cld> tail(m.begin() + static_cast<std::ptrdiff_t>(cut), m.end());
    m.resize(cut);
    groups.push_back(std::move(tail));
    --g;  // re-examine the shrunken group
  }
}

// Centroid with the imaginary-part sanity rule.  A singleton must be real to
// within iteration noise; a cluster polygon may carry imaginary spread as
// long as its mean stays near the real axis.
bool make_cluster(std::vector<cld> members, Cluster& out) {
  cld centroid(0.0L, 0.0L);
  for (const auto& zj : members) centroid += zj;
  centroid /= static_cast<long double>(members.size());
  const long double spread = real_spread(members) + imag_spread(members);
  const long double im_allow =
      members.size() == 1 ? 1e-7L : std::max(1e-7L, 0.5L * spread);
  if (std::abs(centroid.imag()) > im_allow) return false;
  out.members = std::move(members);
  out.value = static_cast<qf>(centroid.real());
  return true;
}

std::vector<Cluster> cluster_roots(const std::vector<cld>& z) {
  const int d = static_cast<int>(z.size());
  long double max_im = 0.0L;
  for (const auto& root : z) max_im = std::max(max_im, std::abs(root.imag()));
  const long double link = std::min(8.0L * max_im, 1e-2L) + 1e-12L;

  std::vector<int> comp(static_cast<std::size_t>(d), -1);
  std::vector<std::vector<cld>> groups;
  for (int i = 0; i < d; ++i) {
    if (comp[static_cast<std::size_t>(i)] >= 0) continue;
    const int id = static_cast<int>(groups.size());
    comp[static_cast<std::size_t>(i)] = id;
    groups.push_back({});
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      groups[static_cast<std::size_t>(id)].push_back(z[static_cast<std::size_t>(a)]);
      for (int b = 0; b < d; ++b) {
        if (comp[static_cast<std::size_t>(b)] >= 0) continue;
        if (std::abs(z[static_cast<std::size_t>(a)] - z[static_cast<std::size_t>(b)]) <= link) {
          comp[static_cast<std::size_t>(b)] = id;
          stack.push_back(b);
        }
      }
    }
  }
  split_flat_clusters(groups);

  std::vector<Cluster> out;
  for (auto& m : groups) {
    Cluster c;
    if (!make_cluster(std::move(m), c))
      fail(errc::complex_roots, "nonreal root cluster, inputs inconsistent");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<cld> roots_of(const std::vector<qf>& sums) {
  const std::vector<qf> monic = monic_from_elementary(elementary_from_sums(sums));
  std::vector<long double> coeffs(monic.size());
  for (std::size_t i = 0; i < monic.size(); ++i) coeffs[i] = static_cast<long double>(monic[i]);
  return durand_kerner(coeffs);
}

qf residual_at(const std::vector<Cluster>& clusters, const std::vector<qf>& x,
               const std::vector<qf>& sums) {
  const int d = static_cast<int>(sums.size()) - 1;
  qf worst = 0;
  for (int k = 1; k <= d; ++k) {
    qf acc = 0;
    for (std::size_t c = 0; c < clusters.size(); ++c) acc += clusters[c].count() * qpowi(x[c], k);
    const qf diff = acc - sums[static_cast<std::size_t>(k)];
    worst = std::max(worst, diff < 0 ? -diff : diff);
  }
  return worst;
}

qf moment_residual(const std::vector<Cluster>& clusters, const std::vector<qf>& sums) {
  std::vector<qf> x(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) x[c] = clusters[c].value;
  return residual_at(clusters, x, sums);
}

// Gauss-Newton on the moment system sum_c mult_c x_c^k = P_k, k = 1..d.
// With multiplicities fixed by the clustering this is the well-conditioned
// statement of the recovery problem, so it reaches far below the accuracy
// the characteristic-polynomial route can deliver (coefficient noise gets
// divided by tiny |p'| there).  The least-squares step goes through a
// column-equilibrated Householder QR; the raw Vandermonde-like columns span
// many orders of magnitude and normal equations would square away all the
// conditioning headroom.
void polish_clusters(std::vector<Cluster>& clusters, const std::vector<qf>& sums) {
  const int d = static_cast<int>(sums.size()) - 1;
  const int n = static_cast<int>(clusters.size());
  if (n == 0) return;
  std::vector<qf> x(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) x[static_cast<std::size_t>(c)] = clusters[static_cast<std::size_t>(c)].value;
  qf res = residual_at(clusters, x, sums);

  for (int iter = 0; iter < 60 && res > qf(1e-34); ++iter) {
    // rhs[k-1] = P_k - sum, J[k-1][c] = mult_c k x_c^(k-1)
    std::vector<qf> rhs(static_cast<std::size_t>(d));
    std::vector<std::vector<qf>> jac(static_cast<std::size_t>(d),
                                     std::vector<qf>(static_cast<std::size_t>(n)));
    for (int k = 1; k <= d; ++k) {
      qf acc = 0;
      for (int c = 0; c < n; ++c) {
        const qf xc = x[static_cast<std::size_t>(c)];
        const qf mult = clusters[static_cast<std::size_t>(c)].count();
        acc += mult * qpowi(xc, k);
        jac[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(c)] =
            mult * k * qpowi(xc, k - 1);
      }
      rhs[static_cast<std::size_t>(k - 1)] = sums[static_cast<std::size_t>(k)] - acc;
    }
    std::vector<qf> colscale(static_cast<std::size_t>(n), qf(0));
    for (int c = 0; c < n; ++c) {
      qf s = 0;
      for (int k = 0; k < d; ++k)
        s += jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] *
             jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      colscale[static_cast<std::size_t>(c)] = sqrtq(s);
      if (colscale[static_cast<std::size_t>(c)] < qf(1e-300)) colscale[static_cast<std::size_t>(c)] = 1;
      for (int k = 0; k < d; ++k)
        jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] /= colscale[static_cast<std::size_t>(c)];
    }
    // Householder QR, applying reflectors to rhs as we go
    bool rank_deficient = false;
    for (int col = 0; col < n; ++col) {
      qf norm = 0;
      for (int k = col; k < d; ++k)
        norm += jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)] *
                jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)];
      norm = sqrtq(norm);
      if (norm < qf(1e-40)) {
        rank_deficient = true;
        break;
      }
      const qf head = jac[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      const qf alpha = head >= 0 ? -norm : norm;
      std::vector<qf> v(static_cast<std::size_t>(d), qf(0));
      v[static_cast<std::size_t>(col)] = head - alpha;
      for (int k = col + 1; k < d; ++k)
        v[static_cast<std::size_t>(k)] = jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(col)];
      qf vsq = 0;
      for (int k = col; k < d; ++k) vsq += v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
      if (vsq < qf(1e-300)) continue;
      for (int cc = col; cc < n; ++cc) {
        qf dot = 0;
        for (int k = col; k < d; ++k)
          dot += v[static_cast<std::size_t>(k)] * jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(cc)];
        const qf f = 2 * dot / vsq;
        for (int k = col; k < d; ++k)
          jac[static_cast<std::size_t>(k)][static_cast<std::size_t>(cc)] -= f * v[static_cast<std::size_t>(k)];
      }
      qf dot = 0;
      for (int k = col; k < d; ++k) dot += v[static_cast<std::size_t>(k)] * rhs[static_cast<std::size_t>(k)];
      const qf f = 2 * dot / vsq;
      for (int k = col; k < d; ++k) rhs[static_cast<std::size_t>(k)] -= f * v[static_cast<std::size_t>(k)];
    }
    if (rank_deficient) break;
    std::vector<qf> delta(static_cast<std::size_t>(n));
    for (int row = n - 1; row >= 0; --row) {
      qf s = rhs[static_cast<std::size_t>(row)];
      for (int cc = row + 1; cc < n; ++cc)
        s -= jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc)] *
             delta[static_cast<std::size_t>(cc)];
      const qf diag = jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)];
      if ((diag < 0 ? -diag : diag) < qf(1e-40)) {
        rank_deficient = true;
        break;
      }
      delta[static_cast<std::size_t>(row)] = s / diag;
    }
    if (rank_deficient) break;
    for (int c = 0; c < n; ++c) delta[static_cast<std::size_t>(c)] /= colscale[static_cast<std::size_t>(c)];

    // backtracking keeps a long shot from overshooting past the basin
    qf scale = 1;
    bool moved = false;
    for (int bt = 0; bt < 10; ++bt, scale *= qf(0.5)) {
      std::vector<qf> trial = x;
      qf biggest = 0;
      for (int c = 0; c < n; ++c) {
        qf step = scale * delta[static_cast<std::size_t>(c)];
        step = std::clamp(step, qf(-1e-2), qf(1e-2));
        trial[static_cast<std::size_t>(c)] += step;
        biggest = std::max(biggest, step < 0 ? -step : step);
      }
      const qf trial_res = residual_at(clusters, trial, sums);
      if (trial_res < res) {
        x = std::move(trial);
        res = trial_res;
        moved = biggest > qf(1e-36);
        break;
      }
    }
    if (!moved) break;
  }
  for (int c = 0; c < n; ++c) clusters[static_cast<std::size_t>(c)].value = x[static_cast<std::size_t>(c)];
}

// The Renyi inputs arrive as doubles, so the k-th moment 2^((1-k) S_k) is
// only determined to P_k (k-1) ln2 ulp(S_k).  Fitting below that floor fits
// representation noise.
qf moment_noise_floor(const std::vector<qf>& sums) {
  const int d = static_cast<int>(sums.size()) - 1;
  qf floor = 0;
  for (int k = 2; k <= d; ++k) {
    const qf pk = sums[static_cast<std::size_t>(k)];
    if (pk <= qf(0)) continue;
    qf sk = -log2q(pk) / (k - 1);
    if (sk < qf(1)) sk = 1;
    const qf dpk = pk * (k - 1) * qf(0.6931471805599453) * qf(2.220446049250313e-16) * sk;
    floor = std::max(floor, dpk);
  }
  return qf(8) * floor;
}

// Structure search.  The point cloud alone cannot be trusted to reveal
// multiplicities: a double root under coefficient noise splits into two
// well-separated real points (nothing to cluster), while the linkage radius
// can glue a genuinely distinct level onto a multiple root's scatter polygon
// (wrong forced multiplicity).  Split first: while the fit sits above the
// input noise floor, try every contiguous (by real part) two-way cut and
// keep cuts that improve the moment residual decisively; once the residual
// is noise-limited a further split could only absorb input rounding, pulling
// a genuinely multiple root apart by far more than the merge rule forgives.
// Merging cannot be run greedily off the residual, because after a bogus
// pair-merge the many remaining free parameters compensate and push the
// residual back under the floor.  Instead candidate structures come from the
// gap hierarchy: for a threshold t, merge every adjacent run of values
// closer than t.  Scanning thresholds coarsest-first and accepting the first
// candidate that re-polishes to the noise floor prefers multiplicity
// whenever the data cannot rule it out; a wrong coarse structure has the
// fewest parameters left to compensate with, so its misfit shows.  Input
// rounding splits a genuinely multiple root by far more than any fixed
// coincidence radius when the neighborhood is ill-conditioned (1e-4 is
// routine at dimension 8), which is exactly the reading this scan repairs:
// the multiple-root structure still fits the moments at the floor, the
// split one merely ties it, and the coarser candidate wins the tie.
void refine_structure(std::vector<Cluster>& clusters, const std::vector<qf>& sums) {
  polish_clusters(clusters, sums);
  qf best = moment_residual(clusters, sums);
  const qf floor = moment_noise_floor(sums);

  while (best > floor) {
    std::vector<Cluster> winner;
    qf winner_res = best;
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      if (clusters[ci].count() < 2) continue;
      std::vector<cld> sorted = clusters[ci].members;
      std::sort(sorted.begin(), sorted.end(),
                [](const cld& a, const cld& b) { return a.real() < b.real(); });
      for (std::size_t cut = 1; cut < sorted.size(); ++cut) {
        Cluster lo;
        Cluster hi;
        if (!make_cluster(std::vector<cld>(sorted.begin(),
                                           sorted.begin() + static_cast<std::ptrdiff_t>(cut)),
                          lo) ||
            !make_cluster(std::vector<cld>(sorted.begin() + static_cast<std::ptrdiff_t>(cut),
                                           sorted.end()),
                          hi))
          continue;
        std::vector<Cluster> cand;
        cand.reserve(clusters.size() + 1);
        for (std::size_t cj = 0; cj < clusters.size(); ++cj)
          if (cj != ci) cand.push_back(clusters[cj]);
        cand.push_back(std::move(lo));
        cand.push_back(std::move(hi));
        polish_clusters(cand, sums);
        const qf res = moment_residual(cand, sums);
        if (res < qf(0.25) * winner_res) {
          winner_res = res;
          winner = std::move(cand);
        }
      }
    }
    if (winner.empty()) break;
    clusters = std::move(winner);
    best = winner_res;
  }

  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.value < b.value; });
  std::vector<qf> gaps;
  for (std::size_t i = 0; i + 1 < clusters.size(); ++i) {
    const qf g = clusters[i + 1].value - clusters[i].value;
    // radius cap: a wider merge would move mass further than the coarsest
    // tolerance tier forgives, and a split that wide never needs repairing
    // because level gaps below it are unresolvable anyway
    if (g <= qf(1e-3)) gaps.push_back(g);
  }
  std::sort(gaps.begin(), gaps.end(), [](qf a, qf b) { return a > b; });
  for (const qf t : gaps) {
    std::vector<Cluster> cand;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const Cluster& c = clusters[i];
      const bool chain = i > 0 && clusters[i].value - clusters[i - 1].value <= t;
      if (chain) {
        Cluster& a = cand.back();
        a.value = (a.count() * a.value + c.count() * c.value) / qf(a.count() + c.count());
        a.members.insert(a.members.end(), c.members.begin(), c.members.end());
      } else {
        cand.push_back(c);
      }
    }
    if (cand.size() == clusters.size()) continue;
    polish_clusters(cand, sums);
    if (moment_residual(cand, sums) <= floor) {
      clusters = std::move(cand);
      break;
    }
  }
}

std::vector<double> expand_and_clamp(const std::vector<Cluster>& clusters) {
  std::vector<double> roots;
  for (const auto& c : clusters) {
    double v = static_cast<double>(c.value);
    if (v > -1e-7 && v < 0.0) v = 0.0;
    if (v > 1.0 && v < 1.0 + 1e-7) v = 1.0;
    for (int rep = 0; rep < c.count(); ++rep) roots.push_back(v);
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return roots;
}

std::vector<qf> sums_to_quad(const PowerSums& ps) {
  std::vector<qf> out(ps.sums.size());
  for (std::size_t i = 0; i < ps.sums.size(); ++i) out[i] = static_cast<qf>(ps.sums[i]);
  return out;
}

}  // namespace

PowerSums power_sums_from_renyi(const std::vector<double>& renyi) {
  const int dim = static_cast<int>(renyi.size()) + 1;
  if (static_cast<std::size_t>(dim) > dimension_cap())
    fail(errc::dimension_cap_exceeded, "dimension " + std::to_string(dim) + " above cap");
  PowerSums ps;
  ps.sums.assign(static_cast<std::size_t>(dim) + 1, 0.0);
  ps.sums[0] = dim;
  ps.sums[1] = 1.0;
  const double top = std::log2(static_cast<double>(dim)) + 1e-9;
  for (int k = 2; k <= dim; ++k) {
    const double sk = renyi[static_cast<std::size_t>(k) - 2];
    if (!std::isfinite(sk) || sk < -1e-12 || sk > top)
      fail(errc::out_of_range,
           "renyi order " + std::to_string(k) + " outside [0, log2 d]");
    ps.sums[static_cast<std::size_t>(k)] = std::exp2((1.0 - k) * std::max(sk, 0.0));
  }
  return ps;
}

std::vector<double> newton_girard(const PowerSums& ps) {
  if (ps.dim() < 1) fail(errc::empty_input, "no power sums");
  const std::vector<qf> e = elementary_from_sums(sums_to_quad(ps));
  std::vector<double> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = static_cast<double>(e[i]);
  return out;
}

std::vector<double> char_poly(const std::vector<double>& elementary) {
  if (elementary.size() < 2) fail(errc::empty_input, "need at least e_0 and e_1");
  std::vector<qf> e(elementary.size());
  for (std::size_t i = 0; i < elementary.size(); ++i) e[i] = static_cast<qf>(elementary[i]);
  const std::vector<qf> c = monic_from_elementary(e);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = static_cast<double>(c[i]);
  return out;
}

std::vector<double> poly_roots(const std::vector<double>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) fail(errc::empty_input, "constant polynomial");
  if (std::abs(coeffs[static_cast<std::size_t>(d)] - 1.0) > 1e-12)
    fail(errc::out_of_range, "polynomial is not monic");
  const std::vector<cld> z =
      durand_kerner(std::vector<long double>(coeffs.begin(), coeffs.end()));
  return expand_and_clamp(cluster_roots(z));
}

Spectrum spectrum_from_renyi(const std::vector<double>& renyi, int dim) {
  if (dim < 1) fail(errc::dimension_too_small, "dimension must be at least 1");
  if (static_cast<int>(renyi.size()) != dim - 1)
    fail(errc::dimension_mismatch,
         "expected " + std::to_string(dim - 1) + " renyi values for dimension " +
             std::to_string(dim) + ", got " + std::to_string(renyi.size()));
  if (dim == 1) return Spectrum{{1.0}};

  const PowerSums ps = power_sums_from_renyi(renyi);
  // rebuild the sums at extended precision straight from the inputs; the
  // double-rounded PowerSums values stay the public contract but the solver
  // wants every bit the inputs carry
  std::vector<qf> sums = sums_to_quad(ps);
  for (int k = 2; k <= dim; ++k)
    sums[static_cast<std::size_t>(k)] = exp2q(
        qf(1 - k) * static_cast<qf>(std::max(renyi[static_cast<std::size_t>(k) - 2], 0.0)));
  std::vector<Cluster> clusters = cluster_roots(roots_of(sums));
  refine_structure(clusters, sums);
  std::vector<double> roots = expand_and_clamp(clusters);

  for (double r : roots)
    if (r < 0.0 || r > 1.0)
      fail(errc::complex_roots, "root outside [0,1], inputs inconsistent");
  const double total = std::accumulate(roots.begin(), roots.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-7)
    fail(errc::complex_roots, "roots do not sum to one, inputs inconsistent");
  Spectrum out = validate_spectrum(std::move(roots), 1e-6);

  // Round-trip gate: the recovered spectrum must reproduce the input power
  // sums, otherwise a complex conjugate pair was silently averaged away.
  for (int k = 2; k <= dim; ++k) {
    double pk = 0.0;
    for (double v : out.values) pk += std::pow(v, static_cast<double>(k));
    if (std::abs(pk - ps.sums[static_cast<std::size_t>(k)]) > 1e-6)
      fail(errc::complex_roots, "power sums inconsistent with any real spectrum");
  }
  return out;
}

}  // namespace surprisal
