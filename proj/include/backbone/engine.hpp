#pragma once

#include <optional>
#include <string>
#include <vector>

#include "backbone/set_function.hpp"

namespace backbone {

struct AlphaResult {
  double value = 0.0;
  std::optional<SubsetMask> winner;  // absent for Mean
};

/// Aggregated loss over all failed subsets of size alpha. Min/Max report
/// the lexicographically smallest winning bitmask among optima; Mean has
/// no winner. `threads` never changes the result: enumeration is split
/// into fixed chunks whose partial reductions are recombined in chunk
/// order regardless of worker count.
AlphaResult alpha_synergy(const SetFunction& f, int alpha, AggregatorKind agg,
                          const SearchStrategy& strat, int threads = 1);

/// Full sweep over alpha = 1..k with partial atoms per the telescoping
/// rule and monotonicity violations flagged.
BackboneSpectrum compute_backbone(const SetFunction& f, AggregatorKind agg,
                          const SearchStrategy& strat, int threads = 1);

/// Successive differences: atom[a] = syn[a] - syn[a-1] with syn[0] = 0.
std::vector<double> partial_atoms(const std::vector<double>& alpha_synergy);

/// f(full) minus the exact 1-synergy under Min.
double robustness(const SetFunction& f, int threads = 1);

struct DesiderataReport {
  struct MonotonicityViolation {
    SubsetMask subset;
    SubsetMask superset;
    double f_subset;
    double f_superset;
  };
  struct NegativityViolation {
    SubsetMask subset;
    double value;
  };
  std::vector<MonotonicityViolation> monotonicity;
  std::vector<NegativityViolation> negativity;

  bool admissible() const { return monotonicity.empty() && negativity.empty(); }
};

/// Exhaustive admissibility check over all subsets (covering pairs for
/// monotonicity). Refuses ground sets larger than 20.
DesiderataReport verify_desiderata(const SetFunction& f);

}  // namespace backbone
