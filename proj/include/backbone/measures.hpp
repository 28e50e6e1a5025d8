#pragma once

#include <string>
#include <vector>

#include "backbone/distribution.hpp"
#include "backbone/engine.hpp"

namespace backbone {

/// Backbone of a Kullback-Leibler-style divergence: per-scale atoms are
/// differences of prior and posterior partial entropy atoms, so they may
/// be negative even though both constituent spectra are non-negative.
struct DivergenceSpectrum {
  std::vector<double> atoms;
  BackboneSpectrum prior_spectrum;
  BackboneSpectrum posterior_spectrum;
  double total = 0.0;
  bool degenerate_target = false;
};

enum class MiFormulation { Conditional, Joint };

/// Loss view of the local entropy of `state`: failing a set of variables
/// costs h(x) - h(x^-a). Shares `cache` so a sweep reuses marginals.
SetFunction entropy_loss_function(MarginalCache& cache,
                                  const StateVector& state);

BackboneSpectrum entropy_backbone_local(const JointDistribution& dist,
                                        const StateVector& state,
                                        AggregatorKind agg,
                                        const SearchStrategy& strat,
                                        int threads = 1);

/// Per-state local spectra averaged under the pmf; atoms sum to the
/// Shannon entropy.
BackboneSpectrum entropy_backbone_expected(const JointDistribution& dist,
                                           AggregatorKind agg,
                                           const SearchStrategy& strat,
                                           int threads = 1);

/// Direct totals, used both by the divergence backbones and as oracles.
double kl_divergence(const JointDistribution& posterior,
                     const JointDistribution& prior);
double mutual_information(const JointDistribution& joint, int target_index);

DivergenceSpectrum kl_backbone_local(const JointDistribution& posterior,
                                     const JointDistribution& prior,
                                     const StateVector& state,
                                     AggregatorKind agg,
                                     const SearchStrategy& strat,
                                     int threads = 1);

DivergenceSpectrum kl_backbone(const JointDistribution& posterior,
                               const JointDistribution& prior,
                               AggregatorKind agg, const SearchStrategy& strat,
                               int threads = 1);

DivergenceSpectrum negentropy_backbone(const JointDistribution& dist,
                                       AggregatorKind agg,
                                       const SearchStrategy& strat,
                                       int threads = 1);

DivergenceSpectrum negentropy_backbone_local(const JointDistribution& dist,
                                             const StateVector& state,
                                             AggregatorKind agg,
                                             const SearchStrategy& strat,
                                             int threads = 1);

DivergenceSpectrum total_correlation_backbone(const JointDistribution& dist,
                                              AggregatorKind agg,
                                              const SearchStrategy& strat,
                                              int threads = 1);

/// Single-target mutual information backbone. Conditional form returns
/// one atom per source (k); joint form returns k+1. The two forms agree
/// on the total. A target with a single support value yields an all-zero
/// spectrum with degenerate_target set.
DivergenceSpectrum mi_backbone(const JointDistribution& joint_xy,
                               int target_index, MiFormulation form,
                               AggregatorKind agg, const SearchStrategy& strat,
                               int threads = 1);

}  // namespace backbone
