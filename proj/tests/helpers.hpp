#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "backbone/distribution.hpp"
#include "backbone/set_function.hpp"
#include "backbone/subset.hpp"

namespace testutil {

using namespace backbone;

inline JointDistribution xor_distribution() {
  return JointDistribution::from_entries(
      {"x1", "x2", "y"}, {2, 2, 2},
      {{{0, 0, 0}, 0.25}, {{0, 1, 1}, 0.25}, {{1, 0, 1}, 0.25}, {{1, 1, 0}, 0.25}});
}

inline JointDistribution and_distribution() {
  return JointDistribution::from_entries(
      {"x1", "x2", "y"}, {2, 2, 2},
      {{{0, 0, 0}, 0.25}, {{0, 1, 0}, 0.25}, {{1, 0, 0}, 0.25}, {{1, 1, 1}, 0.25}});
}

inline JointDistribution independent_bits(int k) {
  std::vector<std::string> names;
  std::vector<int> alphabet(static_cast<std::size_t>(k), 2);
  for (int i = 0; i < k; ++i) names.push_back("b" + std::to_string(i));
  const std::size_t n = std::size_t{1} << k;
  std::vector<double> dense(n, 1.0 / static_cast<double>(n));
  return JointDistribution(names, alphabet, dense);
}

inline JointDistribution copy_system(int k) {
  std::vector<std::string> names;
  std::vector<int> alphabet(static_cast<std::size_t>(k), 2);
  for (int i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
  std::vector<double> dense(std::size_t{1} << k, 0.0);
  dense.front() = 0.5;
  dense.back() = 0.5;
  return JointDistribution(names, alphabet, dense);
}

/// Random strictly-positive pmf (full support keeps every local quantity
/// defined); exponential weights normalized.
inline JointDistribution random_distribution(std::mt19937_64& rng, int k,
                                             int max_alphabet) {
  std::vector<std::string> names;
  std::vector<int> alphabet;
  std::uniform_int_distribution<int> pick_a(2, max_alphabet);
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) {
    names.push_back("v" + std::to_string(i));
    alphabet.push_back(pick_a(rng));
    total *= static_cast<std::size_t>(alphabet.back());
  }
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> dense(total);
  double sum = 0.0;
  for (double& p : dense) {
    p = weight(rng) + 1e-6;
    sum += p;
  }
  for (double& p : dense) p /= sum;
  return JointDistribution(names, alphabet, dense);
}

/// Independent oracle for the local entropy loss: marginal probabilities
/// by direct summation over the full state space, no caches, no engine.
inline double oracle_marginal_prob(const JointDistribution& dist,
                                   const StateVector& state,
                                   const SubsetMask& keep) {
  double p = 0.0;
  for (std::uint64_t idx = 0; idx < dist.num_states(); ++idx) {
    const StateVector s = dist.decode(idx);
    bool match = true;
    for (int i : keep.indices())
      if (s[static_cast<std::size_t>(i)] != state[static_cast<std::size_t>(i)])
        match = false;
    if (match) p += dist.probability_at(idx);
  }
  return p;
}

inline double oracle_entropy_loss(const JointDistribution& dist,
                                  const StateVector& state,
                                  const SubsetMask& failed) {
  const double h_full = -std::log2(dist.probability(state));
  const SubsetMask keep = failed.complement();
  if (keep.empty()) return h_full;
  return h_full + std::log2(oracle_marginal_prob(dist, state, keep));
}

/// Brute-force alpha-synergy by plain enumeration of index subsets.
inline double oracle_alpha_synergy(const JointDistribution& dist,
                                   const StateVector& state, int alpha,
                                   AggregatorKind agg) {
  const int k = dist.num_variables();
  double best = 0.0, sum = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    if (std::popcount(mask) != alpha) continue;
    const double v = oracle_entropy_loss(dist, state, SubsetMask{mask, k});
    if (count == 0)
      best = v;
    else if (agg == AggregatorKind::Min)
      best = std::min(best, v);
    else
      best = std::max(best, v);
    sum += v;
    ++count;
  }
  return agg == AggregatorKind::Mean ? sum / static_cast<double>(count) : best;
}

}  // namespace testutil
