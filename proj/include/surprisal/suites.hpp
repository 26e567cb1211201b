#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "surprisal/sampler.hpp"

namespace surprisal {

struct SamplerConfig {
  std::uint64_t seed = 1;
  int dim_min = 2;
  int dim_max = 8;
  double concentration = 1.0;
  int trials = 1000;
};

// One failed trial.  The digest identifies the sampled inputs; the trial is
// regenerated exactly from (seed, offset), so reports stay small.
struct Violation {
  std::uint64_t offset;
  std::uint64_t digest;
  double slack;
};

struct PropertyReport {
  std::string suite;
  int trials = 0;
  std::vector<Violation> violations;  // sorted by offset
  double worst_slack = std::numeric_limits<double>::infinity();  // min margin seen
  double runtime_seconds = 0.0;  // informational; not part of the stable text
};

struct TrialOutcome {
  double slack;  // negative means the checked inequality failed
  std::uint64_t digest;
};

// The thirteen suites: continuity, subadditivity, monotone, production,
// marginal, cantelli, sandwich, sufficiency, smoothed, eta-chi, cumulant,
// spectral, local-monotone.
const std::vector<std::string>& suite_names();

// Re-runs a single trial from (seed, offset); this is the replay hook for a
// reported violation.  mutate enables the suite's debug weakening: bounds
// with a scalable constant are cut by 2^-10, the rest have their inequality
// reversed.  A weakened suite must report violations, otherwise the suite
// itself is broken.
TrialOutcome replay_trial(const std::string& suite, const SamplerConfig& cfg,
                          std::uint64_t offset, bool mutate = false);

// Runs cfg.trials independent trials.  run_suite may execute trials in
// parallel (OpenMP when available); run_suite_serial is the reference
// implementation.  Both produce identical reports: aggregation is a min and
// an offset-sorted concatenation, neither depends on execution order.
PropertyReport run_suite(const std::string& suite, const SamplerConfig& cfg, bool mutate = false);
PropertyReport run_suite_serial(const std::string& suite, const SamplerConfig& cfg,
                                bool mutate = false);

// Stable one-line rendering (plus one line per violation, first ten), no
// runtime: byte-identical across runs and across serial/parallel execution.
void write_report(std::ostream& out, const PropertyReport& rep);

// FNV-1a over the raw bytes of the doubles.
std::uint64_t fnv_digest(const std::vector<double>& values);

}  // namespace surprisal
