#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "backbone/set_function.hpp"

namespace backbone {

struct HeuristicResult {
  double value = 0.0;
  SubsetMask winner;
};

/// Random-subset search for the minimally (or maximally, sign = -1)
/// destructive failed set of size alpha. Falls back to the exhaustive
/// sweep when C(k, alpha) <= num_samples. Deterministic given the seed.
HeuristicResult sample_extreme_bipartition(const SetFunction& f, int alpha,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed,
                                           int sign = +1);

inline HeuristicResult sample_min_bipartition(const SetFunction& f, int alpha,
                                              std::uint64_t num_samples,
                                              std::uint64_t seed) {
  return sample_extreme_bipartition(f, alpha, num_samples, seed, +1);
}

/// Unbiased mean of the loss over num_samples random size-alpha subsets.
double sample_mean_loss(const SetFunction& f, int alpha,
                        std::uint64_t num_samples, std::uint64_t seed);

/// Simulated annealing over size-alpha failed sets. Moves swap one
/// failed index for one surviving index, so every visited subset has
/// cardinality alpha. Metropolis acceptance, geometric cooling, best
/// seen across restarts. Deterministic given the seed.
HeuristicResult anneal_extreme_bipartition(const SetFunction& f, int alpha,
                                           const AnnealSchedule& sched,
                                           std::uint64_t seed, int sign = +1);

inline HeuristicResult anneal_min_bipartition(const SetFunction& f, int alpha,
                                              const AnnealSchedule& sched,
                                              std::uint64_t seed) {
  return anneal_extreme_bipartition(f, alpha, sched, seed, +1);
}

/// Scale-aware default: initial temperature from the sample standard
/// deviation of 32 random subset losses, cooling 0.95, 50 steps per
/// temperature, 4 restarts.
AnnealSchedule default_schedule(const SetFunction& f, int alpha,
                                std::uint64_t seed);

struct ViolationReport {
  struct Entry {
    int alpha;
    double value;
    double previous;
  };
  std::vector<Entry> violations;
  std::optional<std::vector<double>> repaired;

  bool clean() const { return violations.empty(); }
};

/// Flags every alpha whose synergy dropped below its predecessor by more
/// than 1e-9.
ViolationReport monotonicity_check(const BackboneSpectrum& spectrum);

/// Replaces the synergy series by its running maximum and recomputes the
/// atoms; the result is flagged as repaired and its atoms are >= 0.
BackboneSpectrum enforce_monotone(const BackboneSpectrum& spectrum);

}  // namespace backbone
