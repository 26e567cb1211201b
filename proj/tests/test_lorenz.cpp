#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "surprisal/lorenz.hpp"
#include "surprisal/sampler.hpp"

using namespace surprisal;

namespace {

Dichotomy canonical() {
  return make_dichotomy(validate_spectrum({0.75, 0.25}), validate_spectrum({0.5, 0.5}));
}

// Hypothesis-testing functional E_t(p) = sum_i max(p_i - t s_i, 0).  The
// transition p -> q relative to (s, s') is feasible exactly when
// E_t(p||s) >= E_t(q||s') for every t >= 0, and both sides are piecewise
// linear in t with kinks only at the ratio points, so checking the union of
// ratios (plus t = 0) decides it.
double e_t(const Dichotomy& d, double t) {
  double acc = 0.0;
  for (int i = 0; i < d.dim(); ++i) acc += std::max(d.p[i] - t * d.s[i], 0.0);
  return acc;
}

bool e_t_feasible(const Dichotomy& from, const Dichotomy& to) {
  std::set<double> ts{0.0};
  for (int i = 0; i < from.dim(); ++i) ts.insert(from.p[i] / from.s[i]);
  for (int i = 0; i < to.dim(); ++i) ts.insert(to.p[i] / to.s[i]);
  for (double t : ts)
    if (e_t(from, t) < e_t(to, t) - 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("curve of the canonical dichotomy") {
  const LorenzCurve c = lorenz_curve(canonical());
  REQUIRE(c.points.size() == 3);
  CHECK(c.points[0] == std::pair{0.0, 0.0});
  CHECK(c.points[1] == std::pair{0.5, 0.75});
  CHECK(c.points[2] == std::pair{1.0, 1.0});

  SUBCASE("interpolation") {
    CHECK(eval_at(c, 0.25) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(eval_at(c, 0.75) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(eval_at(c, 0.0) == 0.0);
    CHECK(eval_at(c, 1.0) == 1.0);
  }
  SUBCASE("arguments outside the unit interval are rejected") {
    try {
      eval_at(c, -0.01);
      FAIL("expected out_of_range");
    } catch (const error& e) {
      CHECK(e.code() == errc::out_of_range);
    }
    CHECK_THROWS_AS(eval_at(c, 1.01), error);
  }
  SUBCASE("slope bounds are the extreme ratios") {
    const auto [lo, hi] = slope_bounds(canonical());
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(hi == doctest::Approx(1.5).epsilon(1e-15));
  }
}

TEST_CASE("curve collapses ties and skips zero-mass bins") {
  // p = (0.5, 0.25, 0.25, 0) over uniform reference: ratios 2, 1, 1, 0
  const Dichotomy d =
      make_dichotomy(validate_spectrum({0.5, 0.25, 0.25, 0.0}), uniform_spectrum(4));
  const LorenzCurve c = lorenz_curve(d);
  CHECK(eval_at(c, 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eval_at(c, 0.75) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval_at(c, 1.0) == 1.0);
  // concave: slopes non-increasing across every breakpoint
  for (std::size_t i = 2; i < c.points.size(); ++i) {
    const auto [x0, y0] = c.points[i - 2];
    const auto [x1, y1] = c.points[i - 1];
    const auto [x2, y2] = c.points[i];
    CHECK((y1 - y0) * (x2 - x1) >= (y2 - y1) * (x1 - x0) - 1e-12);
  }
}

TEST_CASE("make_lorenz_curve validates shape") {
  using P = std::vector<std::pair<double, double>>;
  CHECK_NOTHROW(make_lorenz_curve(P{{0.0, 0.0}, {0.5, 0.75}, {1.0, 1.0}}));
  // endpoint snapping tolerance
  CHECK_NOTHROW(make_lorenz_curve(P{{1e-13, 1e-13}, {0.5, 0.75}, {1.0 - 1e-10, 1.0}}));

  auto code_of = [](P pts) {
    try {
      make_lorenz_curve(std::move(pts));
    } catch (const error& e) {
      return e.code();
    }
    return errc::unknown_suite;  // sentinel: no throw
  };
  CHECK(code_of(P{{0.0, 0.0}}) == errc::invalid_curve);                       // too short
  CHECK(code_of(P{{0.2, 0.0}, {1.0, 1.0}}) == errc::invalid_curve);           // bad origin
  CHECK(code_of(P{{0.0, 0.0}, {0.5, 0.2}, {0.5, 0.4}, {1.0, 1.0}}) ==         // x not increasing
        errc::invalid_curve);
  CHECK(code_of(P{{0.0, 0.0}, {0.5, 0.8}, {0.7, 0.7}, {1.0, 1.0}}) ==         // y decreasing
        errc::invalid_curve);
  CHECK(code_of(P{{0.0, 0.0}, {0.5, 0.2}, {1.0, 1.0}}) == errc::invalid_curve);  // convex kink
}

TEST_CASE("dominates and exact_transition conventions") {
  const Dichotomy cano = canonical();
  SUBCASE("every curve dominates itself with zero gap at x = 0") {
    const TransitionVerdict v = exact_transition(cano, cano);
    CHECK(v.decision);
    CHECK(v.worst_gap == 0.0);
    CHECK(v.witness_x == 0.0);
  }
  SUBCASE("strict domination still reports the x = 0 tie") {
    const Dichotomy flat =
        make_dichotomy(validate_spectrum({0.5, 0.5}), validate_spectrum({0.5, 0.5}));
    const TransitionVerdict v = exact_transition(cano, flat);
    CHECK(v.decision);
    CHECK(v.worst_gap == 0.0);
    CHECK(v.witness_x == 0.0);
  }
  SUBCASE("infeasible reverse direction names an interior witness") {
    const Dichotomy flat =
        make_dichotomy(validate_spectrum({0.5, 0.5}), validate_spectrum({0.5, 0.5}));
    const TransitionVerdict v = exact_transition(flat, cano);
    CHECK_FALSE(v.decision);
    CHECK(v.worst_gap == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(v.witness_x == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("exact transitions agree with the hypothesis-testing oracle") {
  Rng rng(211);
  int feasible = 0;
  for (int t = 0; t < 4000; ++t) {
    const int da = rng.uniform_int(2, 6);
    const int db = rng.uniform_int(2, 6);
    const Dichotomy a = sample_dichotomy(rng, da, 1.0, 0.01);
    const Dichotomy b = sample_dichotomy(rng, db, 1.0, 0.01);
    const bool lorenz = exact_transition(a, b).decision;
    const bool oracle = e_t_feasible(a, b);
    CHECK(lorenz == oracle);
    feasible += lorenz;
  }
  // the sample must exercise both verdicts
  CHECK(feasible > 0);
  CHECK(feasible < 4000);
}

TEST_CASE("uniform references reduce to partial-sum majorization") {
  Rng rng(212);
  for (int t = 0; t < 2000; ++t) {
    const int dim = rng.uniform_int(2, 6);
    Spectrum a = sample_spectrum(rng, dim, 1.0);
    Spectrum b = sample_spectrum(rng, dim, 1.0);
    const bool lorenz =
        exact_transition(uniform_reference(a), uniform_reference(b)).decision;

    std::vector<double> pa = a.values, pb = b.values;
    std::sort(pa.begin(), pa.end(), std::greater<>());
    std::sort(pb.begin(), pb.end(), std::greater<>());
    bool majorizes = true;
    double ca = 0.0, cb = 0.0;
    for (int i = 0; i < dim; ++i) {
      ca += pa[static_cast<std::size_t>(i)];
      cb += pb[static_cast<std::size_t>(i)];
      if (ca < cb - 1e-12) majorizes = false;
    }
    CHECK(lorenz == majorizes);
  }
}

TEST_CASE("approx transition interpolates between exact and trivial") {
  const Dichotomy flat =
      make_dichotomy(validate_spectrum({0.5, 0.5}), validate_spectrum({0.5, 0.5}));
  const Dichotomy cano = canonical();
  // flat -> canonical is infeasible exactly, feasible once eps flattens the
  // target past the gap
  CHECK_FALSE(approx_transition(flat, cano, 0.0).decision);
  CHECK_FALSE(approx_transition(flat, cano, 0.1).decision);
  CHECK(approx_transition(flat, cano, 0.25).decision);
  CHECK(approx_transition(flat, cano, 0.4).decision);
  try {
    approx_transition(flat, cano, 1.0);
    FAIL("expected invalid_epsilon");
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_epsilon);
  }
}

TEST_CASE("curve csv is stable") {
  std::ostringstream os;
  write_curve_csv(lorenz_curve(canonical()), os);
  CHECK(os.str() == "x,y\n0,0\n0.5,0.75\n1,1\n");
}
