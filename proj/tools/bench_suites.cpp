// Compares the parallel suite runner and the subset-exact smoothed-entropy
// kernel against their serial reference implementations: timings plus a
// byte-identity check of the reports.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "surprisal/approx.hpp"
#include "surprisal/sampler.hpp"
#include "surprisal/suites.hpp"

using namespace surprisal;

namespace {

std::string render(const PropertyReport& rep) {
  std::ostringstream os;
  write_report(os, rep);
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  SamplerConfig cfg;
  cfg.seed = 97;
  cfg.trials = argc > 1 ? std::atoi(argv[1]) : 2000;

  std::printf("%-16s %10s %10s %8s  %s\n", "suite", "serial_s", "parallel_s", "speedup",
              "reports");
  bool ok = true;
  for (const auto& name : suite_names()) {
    const PropertyReport ser = run_suite_serial(name, cfg);
    const PropertyReport par = run_suite(name, cfg);
    const bool same = render(ser) == render(par);
    ok = ok && same;
    std::printf("%-16s %10.3f %10.3f %8.2f  %s\n", name.c_str(), ser.runtime_seconds,
                par.runtime_seconds, ser.runtime_seconds / std::max(par.runtime_seconds, 1e-9),
                same ? "identical" : "DIFFER");
  }

  // dim-16 subset enumeration, 64 instances
  Rng rng = trial_rng(cfg.seed, 0);
  double acc_serial = 0.0;
  double acc_parallel = 0.0;
  double t_serial = 0.0;
  double t_parallel = 0.0;
  for (int i = 0; i < 64; ++i) {
    const Dichotomy d = sample_dichotomy(rng, 16, 1.0, 1e-5);
    const double eps = 0.05 + 0.01 * i;
    auto t0 = std::chrono::steady_clock::now();
    acc_serial += smin_exact_serial(d, eps);
    t_serial += seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    acc_parallel += smin_exact(d, eps);
    t_parallel += seconds_since(t0);
  }
  const bool same = acc_serial == acc_parallel;
  ok = ok && same;
  std::printf("%-16s %10.3f %10.3f %8.2f  %s\n", "smin-exact-d16", t_serial, t_parallel,
              t_serial / std::max(t_parallel, 1e-9), same ? "identical" : "DIFFER");
  return ok ? 0 : 1;
}
