#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "surprisal/sampler.hpp"
#include "surprisal/suites.hpp"

using namespace surprisal;

TEST_CASE("rng primitives") {
  SUBCASE("same seed, same stream") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  }
  SUBCASE("uniform stays in [0,1)") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }
  SUBCASE("uniform_int bounds are inclusive and reached") {
    Rng rng(2);
    bool lo = false, hi = false;
    for (int i = 0; i < 2000; ++i) {
      const int v = rng.uniform_int(3, 7);
      CHECK(v >= 3);
      CHECK(v <= 7);
      lo |= (v == 3);
      hi |= (v == 7);
    }
    CHECK(lo);
    CHECK(hi);
  }
  SUBCASE("normal and gamma have sane moments") {
    Rng rng(3);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      sum += x;
      sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.03);
    CHECK(std::abs(sq / n - 1.0) < 0.05);

    double gsum = 0.0;
    for (int i = 0; i < n; ++i) gsum += rng.gamma(2.5);
    CHECK(std::abs(gsum / n - 2.5) < 0.05);
  }
  SUBCASE("trial streams are independent of replay order") {
    Rng a = trial_rng(5, 17);
    Rng fresh = trial_rng(5, 17);
    (void)trial_rng(5, 16).uniform();  // consuming another stream changes nothing
    for (int i = 0; i < 10; ++i) CHECK(a.uniform() == fresh.uniform());
    CHECK(mix_seed(5, 17) != mix_seed(5, 18));
    CHECK(mix_seed(5, 17) != mix_seed(6, 17));
  }
}

TEST_CASE("samplers produce valid objects") {
  Rng rng(7);
  SUBCASE("spectra are normalized and floored") {
    for (int t = 0; t < 200; ++t) {
      const int dim = rng.uniform_int(2, 10);
      const double floor = 0.01 / dim;
      const Spectrum p = sample_spectrum(rng, dim, 0.7, floor);
      double mass = 0.0;
      for (int i = 0; i < dim; ++i) {
        CHECK(p[i] >= floor - 1e-12);
        mass += p[i];
      }
      CHECK(std::abs(mass - 1.0) < 1e-12);
    }
  }
  SUBCASE("stochastic rows sum to one") {
    const Matrix m = sample_stochastic(rng, 4, 6);
    REQUIRE(m.size() == 4);
    for (const auto& row : m) {
      REQUIRE(row.size() == 6);
      CHECK(std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0) < 1e-12);
    }
  }
  SUBCASE("bistochastic rows and columns sum to one") {
    const int dim = 5;
    const Matrix m = sample_bistochastic(rng, dim);
    for (int i = 0; i < dim; ++i) {
      double row = 0.0, col = 0.0;
      for (int j = 0; j < dim; ++j) {
        CHECK(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] >= -1e-15);
        row += m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        col += m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
      CHECK(std::abs(row - 1.0) < 1e-12);
      CHECK(std::abs(col - 1.0) < 1e-12);
    }
  }
  SUBCASE("push_through preserves mass") {
    const Spectrum p = sample_spectrum(rng, 4, 1.0);
    const Matrix m = sample_stochastic(rng, 4, 7);
    const std::vector<double> q = push_through(p.values, m);
    CHECK(std::abs(std::accumulate(q.begin(), q.end(), 0.0) - 1.0) < 1e-12);
  }
}

TEST_CASE("fnv digest") {
  CHECK(fnv_digest({}) == 0xcbf29ce484222325ull);
  CHECK(fnv_digest({1.0, 0.5}) == 0x2c194bea19d690b5ull);
  CHECK(fnv_digest({0.5, 1.0}) != fnv_digest({1.0, 0.5}));
}

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.size() == 13);
  SamplerConfig cfg;
  cfg.trials = 0;
  for (const auto& n : names) CHECK_NOTHROW(run_suite(n, cfg));
  try {
    run_suite("no-such-suite", cfg);
    FAIL("expected unknown_suite");
  } catch (const error& e) {
    CHECK(e.code() == errc::unknown_suite);
  }
  SUBCASE("config validation") {
    SamplerConfig bad;
    bad.trials = -1;
    CHECK_THROWS_AS(run_suite("monotone", bad), error);
    bad = SamplerConfig{};
    bad.dim_min = 5;
    bad.dim_max = 3;
    CHECK_THROWS_AS(run_suite("monotone", bad), error);
    bad = SamplerConfig{};
    bad.concentration = 0.0;
    CHECK_THROWS_AS(run_suite("monotone", bad), error);
  }
}

TEST_CASE("honest suites pass and weakened suites fail") {
  SamplerConfig cfg;
  cfg.seed = 20260815;
  cfg.trials = 250;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const PropertyReport honest = run_suite(name, cfg);
    CHECK(honest.trials == cfg.trials);
    CHECK(honest.violations.empty());
    CHECK(honest.worst_slack >= 0.0);

    const PropertyReport weakened = run_suite(name, cfg, true);
    CHECK(weakened.violations.size() > 0);
    CHECK(weakened.worst_slack < 0.0);
  }
}

TEST_CASE("parallel and serial runs render identically") {
  SamplerConfig cfg;
  cfg.seed = 31;
  cfg.trials = 120;
  for (const std::string name : {"monotone", "cantelli", "spectral"}) {
    for (bool mutate : {false, true}) {
      const PropertyReport a = run_suite(name, cfg, mutate);
      const PropertyReport b = run_suite_serial(name, cfg, mutate);
      std::ostringstream sa, sb;
      write_report(sa, a);
      write_report(sb, b);
      CHECK(sa.str() == sb.str());
    }
  }
}

TEST_CASE("violations replay exactly") {
  SamplerConfig cfg;
  cfg.seed = 7;
  cfg.trials = 60;
  const PropertyReport rep = run_suite("cantelli", cfg, true);
  REQUIRE(rep.violations.size() > 1);
  // sorted by offset
  for (std::size_t i = 1; i < rep.violations.size(); ++i)
    CHECK(rep.violations[i - 1].offset < rep.violations[i].offset);
  // each entry regenerates bit for bit from (seed, offset)
  for (const Violation& v : rep.violations) {
    const TrialOutcome redo = replay_trial("cantelli", cfg, v.offset, true);
    CHECK(redo.slack == v.slack);
    CHECK(redo.digest == v.digest);
    // and the honest replay of the same inputs passes
    CHECK(replay_trial("cantelli", cfg, v.offset).slack >= 0.0);
  }
  // worst_slack is the minimum over all trials
  double worst = std::numeric_limits<double>::infinity();
  for (int off = 0; off < cfg.trials; ++off)
    worst = std::min(worst, replay_trial("cantelli", cfg, off, true).slack);
  CHECK(rep.worst_slack == worst);
}

TEST_CASE("report text is frozen") {
  SamplerConfig cfg;
  cfg.seed = 7;
  cfg.trials = 3;
  std::ostringstream honest, weakened;
  write_report(honest, run_suite("eta-chi", cfg));
  CHECK(honest.str() == "suite=eta-chi trials=3 violations=0 worst_slack=0.22973137264347315\n");

  write_report(weakened, run_suite("eta-chi", cfg, true));
  CHECK(weakened.str() ==
        "suite=eta-chi trials=3 violations=3 worst_slack=-0.28269811440345916\n"
        "violation offset=0 digest=74cc31ad2415ffbb slack=-0.15013805198691618\n"
        "violation offset=1 digest=93dd0ab2c3421bc4 slack=-0.28269811440345916\n"
        "violation offset=2 digest=ca7b04a54831bb26 slack=-0.16628316592142536\n");
}

TEST_CASE("only the first ten violations are listed") {
  SamplerConfig cfg;
  cfg.seed = 3;
  cfg.trials = 40;
  const PropertyReport rep = run_suite("monotone", cfg, true);
  REQUIRE(rep.violations.size() > 10);
  std::ostringstream os;
  write_report(os, rep);
  const std::string text = os.str();
  int lines = 0;
  for (char c : text) lines += (c == '\n');
  CHECK(lines == 12);  // header + ten violations + omitted count
  CHECK(text.find("violations_omitted=" +
                   std::to_string(rep.violations.size() - 10)) != std::string::npos);
}
