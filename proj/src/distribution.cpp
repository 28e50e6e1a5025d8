#include "backbone/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace backbone {

namespace {
constexpr std::size_t kMaxStates = std::size_t{1} << 26;
}

JointDistribution::JointDistribution(std::vector<std::string> variable_names,
                                     std::vector<int> alphabet_sizes,
                                     std::vector<double> dense_pmf)
    : names_(std::move(variable_names)),
      alphabet_(std::move(alphabet_sizes)),
      pmf_(std::move(dense_pmf)) {
  if (names_.size() != alphabet_.size())
    throw std::invalid_argument("variable_names and alphabet_sizes disagree");
  std::size_t total = 1;
  strides_.resize(alphabet_.size());
  for (std::size_t i = alphabet_.size(); i-- > 0;) {
    if (alphabet_[i] <= 0)
      throw std::invalid_argument("alphabet sizes must be positive");
    strides_[i] = total;
    total *= static_cast<std::size_t>(alphabet_[i]);
    if (total > kMaxStates)
      throw std::invalid_argument("state space too large for dense storage");
  }
  if (pmf_.size() != total)
    throw std::invalid_argument("pmf size does not match alphabet product");
  validate();
  for (std::uint64_t i = 0; i < pmf_.size(); ++i)
    if (pmf_[i] > 0) support_.push_back(i);
}

JointDistribution JointDistribution::from_entries(
    std::vector<std::string> variable_names, std::vector<int> alphabet_sizes,
    const std::vector<std::pair<StateVector, double>>& entries) {
  std::size_t total = 1;
  for (int a : alphabet_sizes) {
    if (a <= 0) throw std::invalid_argument("alphabet sizes must be positive");
    total *= static_cast<std::size_t>(a);
    if (total > kMaxStates)
      throw std::invalid_argument("state space too large for dense storage");
  }
  std::vector<double> dense(total, 0.0);
  JointDistribution probe(variable_names, alphabet_sizes,
                          [&] {
                            std::vector<double> unit(total, 0.0);
                            unit[0] = 1.0;
                            return unit;
                          }());
  for (const auto& [state, p] : entries) dense[probe.encode(state)] += p;
  return JointDistribution(std::move(variable_names),
                           std::move(alphabet_sizes), std::move(dense));
}

void JointDistribution::validate() const {
  double sum = 0;
  for (double p : pmf_) {
    if (!(p >= 0)) throw std::invalid_argument("negative or NaN probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbTolerance)
    throw std::invalid_argument("probabilities do not sum to 1");
}

std::uint64_t JointDistribution::encode(const StateVector& state) const {
  if (state.size() != alphabet_.size())
    throw std::invalid_argument("state length does not match variable count");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] < 0 || state[i] >= alphabet_[i])
      throw std::out_of_range("symbol outside its alphabet");
    idx += static_cast<std::uint64_t>(state[i]) * strides_[i];
  }
  return idx;
}

StateVector JointDistribution::decode(std::uint64_t index) const {
  StateVector state(alphabet_.size());
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    state[i] = static_cast<int>(index / strides_[i]) % alphabet_[i];
  }
  return state;
}

double JointDistribution::probability(const StateVector& state) const {
  return pmf_[encode(state)];
}

JointDistribution JointDistribution::marginalize(const SubsetMask& keep) const {
  if (keep.ground_size != num_variables())
    throw std::invalid_argument("keep mask ground size mismatch");
  std::vector<std::string> names;
  std::vector<int> alphabet;
  for (int i : keep.indices()) {
    names.push_back(names_[i]);
    alphabet.push_back(alphabet_[i]);
  }
  std::size_t total = 1;
  for (int a : alphabet) total *= static_cast<std::size_t>(a);
  std::vector<double> dense(total, 0.0);

  // Sub-strides over the kept coordinates, most-significant first.
  std::vector<std::pair<std::size_t, std::uint64_t>> kept;  // (var, sub-stride)
  {
    std::uint64_t stride = total;
    for (int i = 0; i < num_variables(); ++i) {
      if (!keep.contains(i)) continue;
      stride /= static_cast<std::uint64_t>(alphabet_[i]);
      kept.emplace_back(i, stride);
    }
  }
  for (std::uint64_t idx : support_) {
    std::uint64_t sub = 0;
    for (const auto& [var, stride] : kept) {
      const int sym =
          static_cast<int>(idx / strides_[var]) % alphabet_[var];
      sub += static_cast<std::uint64_t>(sym) * stride;
    }
    dense[sub] += pmf_[idx];
  }
  return JointDistribution(std::move(names), std::move(alphabet),
                           std::move(dense));
}

JointDistribution JointDistribution::uniform_like() const {
  std::vector<double> dense(pmf_.size(), 1.0 / static_cast<double>(pmf_.size()));
  return JointDistribution(names_, alphabet_, std::move(dense));
}

JointDistribution JointDistribution::product_of_marginals() const {
  std::vector<std::vector<double>> firsts;
  for (int i = 0; i < num_variables(); ++i) {
    std::vector<double> m(static_cast<std::size_t>(alphabet_[i]), 0.0);
    for (std::uint64_t idx : support_) {
      m[static_cast<std::size_t>(
          static_cast<int>(idx / strides_[i]) % alphabet_[i])] += pmf_[idx];
    }
    firsts.push_back(std::move(m));
  }
  std::vector<double> dense(pmf_.size(), 1.0);
  for (std::uint64_t idx = 0; idx < pmf_.size(); ++idx) {
    for (int i = 0; i < num_variables(); ++i) {
      dense[idx] *= firsts[static_cast<std::size_t>(i)][static_cast<std::size_t>(
          static_cast<int>(idx / strides_[i]) % alphabet_[i])];
    }
  }
  return JointDistribution(names_, alphabet_, std::move(dense));
}

double local_entropy(const JointDistribution& dist, const StateVector& state) {
  const double p = dist.probability(state);
  if (p <= 0) throw std::domain_error("state outside support");
  return -std::log2(p);
}

double expected_entropy(const JointDistribution& dist) {
  double h = 0;
  for (std::uint64_t idx : dist.support()) {
    const double p = dist.probability_at(idx);
    h -= p * std::log2(p);
  }
  return h;
}

const std::vector<double>& MarginalCache::marginal(const SubsetMask& keep) {
  auto it = marginals_.find(keep.bits);
  if (it != marginals_.end()) return it->second;
  const JointDistribution marg = dist_.marginalize(keep);
  std::vector<double> dense(marg.num_states());
  for (std::uint64_t i = 0; i < marg.num_states(); ++i)
    dense[i] = marg.probability_at(i);
  return marginals_.emplace(keep.bits, std::move(dense)).first->second;
}

double MarginalCache::marginal_probability(const SubsetMask& keep,
                                           const StateVector& state) {
  const std::vector<double>& dense = marginal(keep);
  // Encode the restriction of `state` to the kept coordinates with the
  // same sub-strides marginalize() uses.
  std::uint64_t sub = 0;
  std::uint64_t stride = dense.size();
  const auto& alphabet = dist_.alphabet_sizes();
  for (int i = 0; i < dist_.num_variables(); ++i) {
    if (!keep.contains(i)) continue;
    stride /= static_cast<std::uint64_t>(alphabet[i]);
    sub += static_cast<std::uint64_t>(state[static_cast<std::size_t>(i)]) * stride;
  }
  return dense[sub];
}

double local_conditional_entropy(const JointDistribution& dist,
                                 const StateVector& state,
                                 const SubsetMask& failed) {
  if (failed.ground_size != dist.num_variables())
    throw std::invalid_argument("failed mask ground size mismatch");
  const double h_full = local_entropy(dist, state);
  const SubsetMask keep = failed.complement();
  if (keep.empty()) return h_full;  // everything failed: h(x) - h(empty) = h(x)
  MarginalCache cache(dist);
  const double p_kept = cache.marginal_probability(keep, state);
  if (p_kept <= 0) throw std::domain_error("state outside support");
  return h_full - (-std::log2(p_kept));
}

}  // namespace backbone
