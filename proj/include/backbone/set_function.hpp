#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "backbone/subset.hpp"

namespace backbone {

enum class AggregatorKind { Min, Max, Mean };

std::string to_string(AggregatorKind agg);
AggregatorKind aggregator_from_string(const std::string& s);

/// Non-negative, monotone, permutation-symmetric function on subsets of
/// a ground set, the generic input of the backbone decomposition. The
/// engine consumes the loss view f(full) - f(survivors); raw-valued
/// functions are wrapped once at construction.
class SetFunction {
 public:
  using Evaluator = std::function<double(const SubsetMask& mask)>;

  /// `raw` evaluates f on the surviving subset (mask = survivors).
  /// Requires f(empty) to be finite; the loss view caches f(full).
  static SetFunction from_raw(int ground_size, Evaluator raw,
                              std::string label);

  /// `loss` evaluates f(full) - f(survivors) directly (mask = failed).
  static SetFunction from_loss(int ground_size, Evaluator loss,
                               std::string label);

  int ground_size() const { return ground_size_; }
  const std::string& label() const { return label_; }

  /// f(full) - f(survivors of `failed`).
  double loss(const SubsetMask& failed) const { return loss_(failed); }

  /// f on the surviving subset. For loss-backed functions this assumes
  /// f(empty) = 0, which holds for every measure shipped here.
  double raw(const SubsetMask& survivors) const { return raw_(survivors); }

 private:
  SetFunction(int k, Evaluator loss, Evaluator raw, std::string label)
      : ground_size_(k),
        loss_(std::move(loss)),
        raw_(std::move(raw)),
        label_(std::move(label)) {}

  int ground_size_;
  Evaluator loss_;
  Evaluator raw_;
  std::string label_;
};

struct AnnealSchedule {
  double initial_temp = 1.0;
  double cooling = 0.95;
  int steps_per_temp = 50;
  int restarts = 4;
};

struct ExactStrategy {};
struct SampledStrategy {
  std::uint64_t num_samples = 0;
  std::uint64_t seed = 0;
};
struct AnnealedStrategy {
  AnnealSchedule schedule;
  std::uint64_t seed = 0;
  bool auto_temp = false;  // derive initial_temp from random subset losses
};

using SearchStrategy =
    std::variant<ExactStrategy, SampledStrategy, AnnealedStrategy>;

std::string strategy_tag(const SearchStrategy& strat);

inline bool is_exact(const SearchStrategy& s) {
  return std::holds_alternative<ExactStrategy>(s);
}

/// Per-scale synergy values and partial atoms, the principal output of
/// the decomposition. alpha_synergy[i] holds scale alpha = i+1.
struct BackboneSpectrum {
  std::vector<double> alpha_synergy;
  std::vector<double> partial_atoms;
  std::vector<std::optional<SubsetMask>> winning_subsets;
  AggregatorKind aggregator = AggregatorKind::Min;
  std::string strategy;
  std::vector<int> monotone_violations;  // alpha values that decreased
  bool repaired = false;

  int scales() const { return static_cast<int>(alpha_synergy.size()); }
  double total() const {
    return alpha_synergy.empty() ? 0.0 : alpha_synergy.back();
  }
};

}  // namespace backbone
