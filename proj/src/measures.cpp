#include "backbone/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace backbone {

namespace {

/// Weighted accumulation of local spectra into an expected spectrum.
struct SpectrumAccumulator {
  std::vector<double> synergy;
  std::vector<double> atoms;
  double weight = 0.0;

  void add(const BackboneSpectrum& local, double w) {
    if (synergy.empty()) {
      synergy.assign(local.alpha_synergy.size(), 0.0);
      atoms.assign(local.partial_atoms.size(), 0.0);
    }
    for (std::size_t i = 0; i < synergy.size(); ++i) {
      synergy[i] += w * local.alpha_synergy[i];
      atoms[i] += w * local.partial_atoms[i];
    }
    weight += w;
  }

  BackboneSpectrum finish(AggregatorKind agg, const std::string& strategy) const {
    BackboneSpectrum out;
    out.aggregator = agg;
    out.strategy = strategy;
    out.alpha_synergy = synergy;
    out.partial_atoms = atoms;
    out.winning_subsets.assign(synergy.size(), std::nullopt);
    double prev = 0.0;
    for (std::size_t i = 0; i < synergy.size(); ++i) {
      if (synergy[i] < prev - 1e-9)
        out.monotone_violations.push_back(static_cast<int>(i) + 1);
      prev = synergy[i];
    }
    return out;
  }
};

BackboneSpectrum local_spectrum(MarginalCache& cache, const StateVector& state,
                                AggregatorKind agg, const SearchStrategy& strat,
                                int threads) {
  SetFunction f = entropy_loss_function(cache, state);
  return compute_backbone(f, agg, strat, threads);
}

void check_compatible(const JointDistribution& a, const JointDistribution& b) {
  if (a.alphabet_sizes() != b.alphabet_sizes())
    throw std::invalid_argument("distributions have different shapes");
}

BackboneSpectrum zero_spectrum(int scales, AggregatorKind agg,
                               const std::string& strategy) {
  BackboneSpectrum s;
  s.aggregator = agg;
  s.strategy = strategy;
  s.alpha_synergy.assign(static_cast<std::size_t>(scales), 0.0);
  s.partial_atoms.assign(static_cast<std::size_t>(scales), 0.0);
  s.winning_subsets.assign(static_cast<std::size_t>(scales), std::nullopt);
  return s;
}

}  // namespace

SetFunction entropy_loss_function(MarginalCache& cache,
                                  const StateVector& state) {
  const JointDistribution& dist = cache.distribution();
  const double h_full = local_entropy(dist, state);
  const int k = dist.num_variables();
  auto loss = [&cache, state, h_full](const SubsetMask& failed) {
    const SubsetMask keep = failed.complement();
    if (keep.empty()) return h_full;
    const double p = cache.marginal_probability(keep, state);
    if (p <= 0) throw std::domain_error("state outside support");
    return h_full + std::log2(p);
  };
  return SetFunction::from_loss(k, std::move(loss), "entropy");
}

BackboneSpectrum entropy_backbone_local(const JointDistribution& dist,
                                        const StateVector& state,
                                        AggregatorKind agg,
                                        const SearchStrategy& strat,
                                        int threads) {
  MarginalCache cache(dist);
  return local_spectrum(cache, state, agg, strat, threads);
}

BackboneSpectrum entropy_backbone_expected(const JointDistribution& dist,
                                           AggregatorKind agg,
                                           const SearchStrategy& strat,
                                           int threads) {
  MarginalCache cache(dist);
  SpectrumAccumulator acc;
  for (std::uint64_t idx : dist.support()) {
    const StateVector state = dist.decode(idx);
    acc.add(local_spectrum(cache, state, agg, strat, threads),
            dist.probability_at(idx));
  }
  if (acc.weight == 0.0)
    throw std::invalid_argument("distribution has empty support");
  return acc.finish(agg, strategy_tag(strat));
}

double kl_divergence(const JointDistribution& posterior,
                     const JointDistribution& prior) {
  check_compatible(posterior, prior);
  double d = 0.0;
  for (std::uint64_t idx : posterior.support()) {
    const double p = posterior.probability_at(idx);
    const double q = prior.probability_at(idx);
    if (q <= 0)
      throw std::domain_error(
          "KL undefined: prior assigns zero to a posterior-support state");
    d += p * std::log2(p / q);
  }
  return d;
}

DivergenceSpectrum kl_backbone_local(const JointDistribution& posterior,
                                     const JointDistribution& prior,
                                     const StateVector& state,
                                     AggregatorKind agg,
                                     const SearchStrategy& strat, int threads) {
  check_compatible(posterior, prior);
  if (prior.probability(state) <= 0)
    throw std::domain_error(
        "KL undefined: prior assigns zero to a posterior-support state");
  DivergenceSpectrum out;
  out.prior_spectrum = entropy_backbone_local(prior, state, agg, strat, threads);
  out.posterior_spectrum =
      entropy_backbone_local(posterior, state, agg, strat, threads);
  out.atoms.resize(out.prior_spectrum.partial_atoms.size());
  for (std::size_t i = 0; i < out.atoms.size(); ++i)
    out.atoms[i] = out.prior_spectrum.partial_atoms[i] -
                   out.posterior_spectrum.partial_atoms[i];
  out.total = std::log2(posterior.probability(state) / prior.probability(state));
  return out;
}

DivergenceSpectrum kl_backbone(const JointDistribution& posterior,
                               const JointDistribution& prior,
                               AggregatorKind agg, const SearchStrategy& strat,
                               int threads) {
  check_compatible(posterior, prior);
  MarginalCache post_cache(posterior);
  MarginalCache prior_cache(prior);
  SpectrumAccumulator prior_acc, post_acc;
  // Expectations are taken under the posterior.
  for (std::uint64_t idx : posterior.support()) {
    const double w = posterior.probability_at(idx);
    const StateVector state = posterior.decode(idx);
    if (prior.probability_at(idx) <= 0)
      throw std::domain_error(
          "KL undefined: prior assigns zero to a posterior-support state");
    prior_acc.add(local_spectrum(prior_cache, state, agg, strat, threads), w);
    post_acc.add(local_spectrum(post_cache, state, agg, strat, threads), w);
  }
  DivergenceSpectrum out;
  out.prior_spectrum = prior_acc.finish(agg, strategy_tag(strat));
  out.posterior_spectrum = post_acc.finish(agg, strategy_tag(strat));
  out.atoms.resize(out.prior_spectrum.partial_atoms.size());
  for (std::size_t i = 0; i < out.atoms.size(); ++i)
    out.atoms[i] = out.prior_spectrum.partial_atoms[i] -
                   out.posterior_spectrum.partial_atoms[i];
  out.total = kl_divergence(posterior, prior);
  return out;
}

DivergenceSpectrum negentropy_backbone(const JointDistribution& dist,
                                       AggregatorKind agg,
                                       const SearchStrategy& strat,
                                       int threads) {
  return kl_backbone(dist, dist.uniform_like(), agg, strat, threads);
}

DivergenceSpectrum negentropy_backbone_local(const JointDistribution& dist,
                                             const StateVector& state,
                                             AggregatorKind agg,
                                             const SearchStrategy& strat,
                                             int threads) {
  return kl_backbone_local(dist, dist.uniform_like(), state, agg, strat,
                           threads);
}

DivergenceSpectrum total_correlation_backbone(const JointDistribution& dist,
                                              AggregatorKind agg,
                                              const SearchStrategy& strat,
                                              int threads) {
  return kl_backbone(dist, dist.product_of_marginals(), agg, strat, threads);
}

double mutual_information(const JointDistribution& joint, int target_index) {
  const int k = joint.num_variables();
  SubsetMask target = SubsetMask::of({target_index}, k);
  const JointDistribution prior = joint.marginalize(target.complement());
  const JointDistribution py = joint.marginalize(target);
  double mi = 0.0;
  for (std::uint64_t idx : joint.support()) {
    const StateVector state = joint.decode(idx);
    StateVector x;
    for (int i = 0; i < k; ++i)
      if (i != target_index) x.push_back(state[static_cast<std::size_t>(i)]);
    const double pxy = joint.probability_at(idx);
    const double px = prior.probability(x);
    const double pyv =
        py.probability({state[static_cast<std::size_t>(target_index)]});
    mi += pxy * std::log2(pxy / (px * pyv));
  }
  return mi;
}

DivergenceSpectrum mi_backbone(const JointDistribution& joint_xy,
                               int target_index, MiFormulation form,
                               AggregatorKind agg, const SearchStrategy& strat,
                               int threads) {
  const int k = joint_xy.num_variables();
  if (target_index < 0 || target_index >= k)
    throw std::invalid_argument("target index out of range");
  const int num_sources = k - 1;
  if (num_sources < 1)
    throw std::invalid_argument("need at least one source variable");

  const SubsetMask target = SubsetMask::of({target_index}, k);
  const JointDistribution py = joint_xy.marginalize(target);
  if (py.support().size() <= 1) {
    const int scales = form == MiFormulation::Conditional ? num_sources : k;
    DivergenceSpectrum out;
    out.atoms.assign(static_cast<std::size_t>(scales), 0.0);
    out.prior_spectrum = zero_spectrum(scales, agg, strategy_tag(strat));
    out.posterior_spectrum = zero_spectrum(scales, agg, strategy_tag(strat));
    out.degenerate_target = true;
    return out;
  }

  if (form == MiFormulation::Joint) {
    // Prior = P(X) x P(Y) over all k variables.
    const JointDistribution px = joint_xy.marginalize(target.complement());
    std::vector<double> dense(joint_xy.num_states());
    for (std::uint64_t idx = 0; idx < joint_xy.num_states(); ++idx) {
      const StateVector state = joint_xy.decode(idx);
      StateVector x;
      for (int i = 0; i < k; ++i)
        if (i != target_index) x.push_back(state[static_cast<std::size_t>(i)]);
      dense[idx] =
          px.probability(x) *
          py.probability({state[static_cast<std::size_t>(target_index)]});
    }
    const JointDistribution prior(joint_xy.variable_names(),
                                  joint_xy.alphabet_sizes(), std::move(dense));
    return kl_backbone(joint_xy, prior, agg, strat, threads);
  }

  // Conditional form: expectation over P(y) of the divergence of
  // P(X | y) from P(X), one slice per target value.
  const JointDistribution px = joint_xy.marginalize(target.complement());
  SpectrumAccumulator prior_acc, post_acc;
  std::vector<double> atoms(static_cast<std::size_t>(num_sources), 0.0);
  double total = 0.0;
  for (std::uint64_t y_idx : py.support()) {
    const double pyv = py.probability_at(y_idx);
    const int y = py.decode(y_idx)[0];
    // Conditional distribution over the sources.
    std::vector<double> dense(px.num_states(), 0.0);
    for (std::uint64_t idx : joint_xy.support()) {
      const StateVector state = joint_xy.decode(idx);
      if (state[static_cast<std::size_t>(target_index)] != y) continue;
      StateVector x;
      for (int i = 0; i < k; ++i)
        if (i != target_index) x.push_back(state[static_cast<std::size_t>(i)]);
      dense[px.encode(x)] += joint_xy.probability_at(idx) / pyv;
    }
    const JointDistribution conditional(px.variable_names(),
                                        px.alphabet_sizes(), std::move(dense));
    const DivergenceSpectrum slice =
        kl_backbone(conditional, px, agg, strat, threads);
    for (std::size_t i = 0; i < atoms.size(); ++i)
      atoms[i] += pyv * slice.atoms[i];
    total += pyv * slice.total;
    prior_acc.add(slice.prior_spectrum, pyv);
    post_acc.add(slice.posterior_spectrum, pyv);
  }
  DivergenceSpectrum out;
  out.atoms = std::move(atoms);
  out.total = total;
  out.prior_spectrum = prior_acc.finish(agg, strategy_tag(strat));
  out.posterior_spectrum = post_acc.finish(agg, strategy_tag(strat));
  return out;
}

}  // namespace backbone
