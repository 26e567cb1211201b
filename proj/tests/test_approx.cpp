#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "surprisal/approx.hpp"
#include "surprisal/lorenz.hpp"
#include "surprisal/sampler.hpp"

using namespace surprisal;

namespace {

constexpr double kTight = 1e-14;

Dichotomy canonical() {
  return make_dichotomy(validate_spectrum({0.75, 0.25}), validate_spectrum({0.5, 0.5}));
}

doctest::Approx near(double v, double eps = kTight) {
  return doctest::Approx(v).epsilon(eps);
}

}  // namespace

TEST_CASE("flat approximation of the canonical dichotomy") {
  const ApproxState a = flat_approximation(canonical(), 0.1);
  CHECK(a.kind == ApproxKind::flat);
  CHECK(a.spectrum[0] == near(0.65));
  CHECK(a.spectrum[1] == near(0.35));
  CHECK(a.m == 1);
  CHECK(a.n == 2);
  CHECK(a.eps == 0.1);

  SUBCASE("moves exactly eps of mass when the ball is interior") {
    CHECK(trace_distance(a.spectrum, canonical().p) == near(0.1));
  }
  SUBCASE("collapses to the reference inside a wide ball") {
    const ApproxState b = flat_approximation(canonical(), 0.3);
    CHECK(b.spectrum[0] == near(0.5));
    CHECK(b.spectrum[1] == near(0.5));
    CHECK(b.m == 0);
    CHECK(b.n == 0);
  }
  SUBCASE("eps = 0 returns the state") {
    const ApproxState b = flat_approximation(canonical(), 0.0);
    CHECK(b.spectrum[0] == 0.75);
    CHECK(b.spectrum[1] == 0.25);
  }
  SUBCASE("eps outside [0,1] rejected") {
    try {
      flat_approximation(canonical(), -0.1);
      FAIL("expected invalid_epsilon");
    } catch (const error& e) {
      CHECK(e.code() == errc::invalid_epsilon);
    }
    CHECK_THROWS_AS(flat_approximation(canonical(), 1.5), error);
  }
}

TEST_CASE("steep approximation") {
  SUBCASE("canonical, eps = 0.1") {
    const ApproxState a = steep_approximation(canonical(), 0.1);
    CHECK(a.kind == ApproxKind::steep);
    CHECK(a.spectrum[0] == near(0.85));
    CHECK(a.spectrum[1] == near(0.15));
    CHECK(a.r_index == 2);
    CHECK(a.zeroed_mass == 0.0);
  }
  SUBCASE("three-level state zeroes the worst tail entry") {
    const Dichotomy d = uniform_reference(validate_spectrum({0.6, 0.3, 0.1}));
    const ApproxState a = steep_approximation(d, 0.15);
    CHECK(a.spectrum[0] == near(0.75));
    CHECK(a.spectrum[1] == near(0.25));
    CHECK(a.spectrum[2] == 0.0);
    CHECK(a.r_index == 2);
    CHECK(a.zeroed_mass == near(0.1));
  }
  SUBCASE("wide ball concentrates everything on the top ratio") {
    const ApproxState a = steep_approximation(canonical(), 0.3);
    CHECK(a.spectrum[0] == 1.0);
    CHECK(a.spectrum[1] == 0.0);
    CHECK(a.r_index == 1);
    CHECK(a.zeroed_mass == near(0.25));
  }
  SUBCASE("eps validation") {
    CHECK_THROWS_AS(steep_approximation(canonical(), 1.0 + 1e-9), error);
  }
}

TEST_CASE("approximations stay inside the ball and sandwich the state") {
  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const int dim = rng.uniform_int(2, 8);
    const Dichotomy d = sample_dichotomy(rng, dim, 1.0, 0.01);
    const double eps = rng.uniform(0.01, 0.6);
    const ApproxState lo = flat_approximation(d, eps);
    const ApproxState hi = steep_approximation(d, eps);

    double mass_lo = 0.0, mass_hi = 0.0;
    for (int i = 0; i < dim; ++i) {
      CHECK(lo.spectrum[i] >= -1e-15);
      CHECK(hi.spectrum[i] >= -1e-15);
      mass_lo += lo.spectrum[i];
      mass_hi += hi.spectrum[i];
    }
    CHECK(mass_lo == near(1.0, 1e-12));
    CHECK(mass_hi == near(1.0, 1e-12));
    CHECK(trace_distance(lo.spectrum, d.p) <= eps + 1e-12);
    CHECK(trace_distance(hi.spectrum, d.p) <= eps + 1e-12);

    const LorenzCurve mid = lorenz_curve(d);
    const LorenzCurve curve_lo = lorenz_curve(make_dichotomy(lo.spectrum, d.s));
    const LorenzCurve curve_hi = lorenz_curve(make_dichotomy(hi.spectrum, d.s));
    CHECK(dominates(mid, curve_lo).decision);
    CHECK(dominates(curve_hi, mid).decision);
  }
}

TEST_CASE("flat approximation is the flattest ball member") {
  // against independently sampled members of the same ball
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const int dim = rng.uniform_int(2, 6);
    const Dichotomy d = sample_dichotomy(rng, dim, 1.0, 0.01);
    const double eps = rng.uniform(0.05, 0.4);
    const ApproxState lo = flat_approximation(d, eps);
    const LorenzCurve curve_lo = lorenz_curve(make_dichotomy(lo.spectrum, d.s));

    // random perturbation inside the ball: move delta <= eps between bins
    Spectrum q = d.p;
    const int a = rng.uniform_int(0, dim - 1);
    const int b = rng.uniform_int(0, dim - 1);
    if (a != b) {
      const double delta = rng.uniform(0.0, std::min(eps, q[a]));
      q.values[static_cast<std::size_t>(a)] -= delta;
      q.values[static_cast<std::size_t>(b)] += delta;
    }
    const LorenzCurve other = lorenz_curve(make_dichotomy(validate_spectrum(q.values), d.s));
    CHECK(dominates(other, curve_lo).decision);
  }
}

TEST_CASE("cantelli envelopes") {
  SUBCASE("frozen slopes at eps = 0.5") {
    const Envelopes env = cantelli_envelopes(canonical(), 0.5);
    CHECK(env.f_sigma == near(0.68630889483511645595));
    CHECK(env.r_steep == near(0.70829044277108507100));
    CHECK(env.r_flat == near(1.83404720328338350242));
  }
  SUBCASE("definition holds for random inputs") {
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
      const Dichotomy d = sample_dichotomy(rng, rng.uniform_int(2, 6), 1.0, 0.01);
      const double eps = rng.uniform(0.05, 0.95);
      const Envelopes env = cantelli_envelopes(d, eps);
      const MeasureSet m = measures(d);
      const double f = std::sqrt(m.V * (1.0 / eps - 1.0));
      CHECK(env.f_sigma == near(f, 1e-12));
      CHECK(env.r_steep == near(std::exp2(m.S - f), 1e-12));
      CHECK(env.r_flat == near(std::exp2(m.S + f), 1e-12));
    }
  }
  SUBCASE("envelope inequalities at every breakpoint") {
    Rng rng(34);
    for (int t = 0; t < 300; ++t) {
      const Dichotomy d = sample_dichotomy(rng, rng.uniform_int(2, 6), 1.0, 0.01);
      const double eps = rng.uniform(0.02, 0.98);
      const Envelopes env = cantelli_envelopes(d, eps);
      const LorenzCurve steep = lorenz_curve(make_dichotomy(
          steep_approximation(d, eps).spectrum, d.s));
      const LorenzCurve flat = lorenz_curve(make_dichotomy(
          flat_approximation(d, eps).spectrum, d.s));
      for (const auto& [x, y] : steep.points)
        CHECK(y >= std::min(env.r_steep * x, 1.0) - 1e-9);
      for (const auto& [x, y] : flat.points)
        CHECK(y <= std::min(env.r_flat * x, 1.0) + 1e-9);
    }
  }
}

TEST_CASE("smoothed divergences") {
  SUBCASE("canonical at eps = 0.5") {
    const SmoothedBounds b = smoothed_divergences(canonical(), 0.5);
    CHECK(b.smax_eps == near(0.0, 1e-12));
    CHECK(b.smin_eps_lower == near(1.0));
    REQUIRE(b.smin_eps_exact.has_value());
    CHECK(*b.smin_eps_exact == near(1.0));
    CHECK(b.f_sigma == near(0.68630889483511645595));
  }
  SUBCASE("eps -> 0 recovers the unsmoothed quantities") {
    const SmoothedBounds b = smoothed_divergences(canonical(), 1e-9);
    const MeasureSet m = measures(canonical());
    CHECK(b.smax_eps == near(m.smax, 1e-6));
    CHECK(*b.smin_eps_exact == near(m.smin, 1e-6));
  }
  SUBCASE("exact value within bounds, dim <= 16") {
    Rng rng(35);
    for (int t = 0; t < 200; ++t) {
      const Dichotomy d = sample_dichotomy(rng, rng.uniform_int(2, 10), 1.0, 0.01);
      const double eps = rng.uniform(0.05, 0.9);
      const SmoothedBounds b = smoothed_divergences(d, eps);
      REQUIRE(b.smin_eps_exact.has_value());
      CHECK(*b.smin_eps_exact >= b.smin_eps_lower - 1e-12);
      // smoothing can only help
      const MeasureSet m = measures(d);
      CHECK(*b.smin_eps_exact >= m.smin - 1e-12);
      CHECK(b.smax_eps <= m.smax + 1e-12);
    }
  }
  SUBCASE("require_exact past the enumeration cap") {
    Rng rng(36);
    const Dichotomy d = sample_dichotomy(rng, 17, 1.0, 0.001);
    CHECK_FALSE(smoothed_divergences(d, 0.1).smin_eps_exact.has_value());
    try {
      smoothed_divergences(d, 0.1, true);
      FAIL("expected exact_search_too_large");
    } catch (const error& e) {
      CHECK(e.code() == errc::exact_search_too_large);
    }
  }
  SUBCASE("eps bounds") {
    CHECK_THROWS_AS(smoothed_divergences(canonical(), 0.0), error);
    CHECK_THROWS_AS(smoothed_divergences(canonical(), 1.0), error);
  }
}

TEST_CASE("exact smoothed min entropy") {
  SUBCASE("hand-enumerated three-level case") {
    // p = (0.5, 0.3, 0.2) against s = (0.2, 0.3, 0.5); eps = 0.25 allows
    // dropping index 2 only: smin = -log2(0.2 + 0.3) = 1
    const Dichotomy d =
        make_dichotomy(validate_spectrum({0.5, 0.3, 0.2}), validate_spectrum({0.2, 0.3, 0.5}));
    CHECK(smin_exact(d, 0.25) == near(1.0, 1e-15));
    CHECK(smin_exact_serial(d, 0.25) == near(1.0, 1e-15));
  }
  SUBCASE("zero smoothing keeps the full support") {
    const Dichotomy d =
        make_dichotomy(validate_spectrum({0.5, 0.3, 0.2}), validate_spectrum({0.2, 0.3, 0.5}));
    CHECK(smin_exact(d, 0.0) == near(0.0, 1e-15));
  }
  SUBCASE("parallel and serial enumerations agree bit for bit") {
    Rng rng(37);
    for (int t = 0; t < 150; ++t) {
      const Dichotomy d = sample_dichotomy(rng, rng.uniform_int(2, 12), 1.0, 0.005);
      const double eps = rng.uniform(0.0, 0.8);
      CHECK(smin_exact(d, eps) == smin_exact_serial(d, eps));
    }
  }
  SUBCASE("dimension cap") {
    Rng rng(38);
    const Dichotomy d = sample_dichotomy(rng, 17, 1.0, 0.001);
    CHECK_THROWS_AS(smin_exact(d, 0.1), error);
  }
}
