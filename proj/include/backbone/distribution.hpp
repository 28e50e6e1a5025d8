#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "backbone/subset.hpp"

namespace backbone {

/// One realization of a joint variable: symbols[i] is the state of
/// variable i. Length must match the owning distribution.
using StateVector = std::vector<int>;

constexpr double kProbTolerance = 1e-9;

/// Discrete joint pmf over k finite-alphabet variables. Dense storage
/// indexed by the mixed-radix encoding of the state vector. Immutable
/// after construction; all queries are pure reads.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> variable_names,
                    std::vector<int> alphabet_sizes,
                    std::vector<double> dense_pmf);

  /// Builds from a sparse list of (state, probability) entries; missing
  /// states have probability zero.
  static JointDistribution from_entries(
      std::vector<std::string> variable_names, std::vector<int> alphabet_sizes,
      const std::vector<std::pair<StateVector, double>>& entries);

  int num_variables() const { return static_cast<int>(alphabet_.size()); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<int>& alphabet_sizes() const { return alphabet_; }
  std::size_t num_states() const { return pmf_.size(); }

  std::uint64_t encode(const StateVector& state) const;
  StateVector decode(std::uint64_t index) const;

  double probability(const StateVector& state) const;
  double probability_at(std::uint64_t index) const { return pmf_[index]; }

  /// State indices with strictly positive probability.
  const std::vector<std::uint64_t>& support() const { return support_; }

  /// Marginal over the kept variables; discarded coordinates are summed
  /// out. An empty keep-set yields the trivial distribution over the
  /// empty tuple with probability 1.
  JointDistribution marginalize(const SubsetMask& keep) const;

  /// Uniform distribution over the full alphabet product (same shape).
  JointDistribution uniform_like() const;
  /// Product of the first-order marginals (same shape).
  JointDistribution product_of_marginals() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> alphabet_;
  std::vector<std::uint64_t> strides_;
  std::vector<double> pmf_;
  std::vector<std::uint64_t> support_;

  void validate() const;
};

/// -log2 P(state); requires P(state) > 0.
double local_entropy(const JointDistribution& dist, const StateVector& state);

/// Sum over the support of P(x) * local_entropy(x).
double expected_entropy(const JointDistribution& dist);

/// Memoizes marginals per keep-mask. A backbone sweep touches every
/// subset, so each marginal is built exactly once and reused.
class MarginalCache {
 public:
  explicit MarginalCache(const JointDistribution& dist) : dist_(dist) {}

  const JointDistribution& distribution() const { return dist_; }

  /// Probability of the restriction of `state` to the kept variables.
  double marginal_probability(const SubsetMask& keep, const StateVector& state);

 private:
  const JointDistribution& dist_;
  std::unordered_map<std::uint64_t, std::vector<double>> marginals_;

  const std::vector<double>& marginal(const SubsetMask& keep);
};

/// h(x^a | x^-a) = h(x) - h(x^-a), where `failed` indexes the failing
/// variables. Always >= 0 for states in the support.
double local_conditional_entropy(const JointDistribution& dist,
                                 const StateVector& state,
                                 const SubsetMask& failed);

}  // namespace backbone
