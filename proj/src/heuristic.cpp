#include "backbone/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "backbone/engine.hpp"

namespace backbone {

namespace {

constexpr std::uint64_t kNoReplacementBudget = std::uint64_t{1} << 20;

std::uint64_t random_subset(std::mt19937_64& rng, int k, int alpha) {
  // Partial Fisher-Yates over the index range.
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::uint64_t mask = 0;
  for (int i = 0; i < alpha; ++i) {
    std::uniform_int_distribution<int> pick(i, k - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(pick(rng))]);
    mask |= std::uint64_t{1} << idx[static_cast<std::size_t>(i)];
  }
  return mask;
}

void consider(double v, std::uint64_t mask, int sign, bool& have, double& best,
              std::uint64_t& best_mask) {
  if (!have || sign * v < sign * best || (v == best && mask < best_mask)) {
    best = v;
    best_mask = mask;
    have = true;
  }
}

}  // namespace

HeuristicResult sample_extreme_bipartition(const SetFunction& f, int alpha,
                                           std::uint64_t num_samples,
                                           std::uint64_t seed, int sign) {
  const int k = f.ground_size();
  const std::uint64_t total = binomial(k, alpha);
  if (total <= num_samples) {
    // Sweep degenerates to the exhaustive search.
    AlphaResult r = alpha_synergy(
        f, alpha, sign > 0 ? AggregatorKind::Min : AggregatorKind::Max,
        ExactStrategy{});
    return {r.value, *r.winner};
  }

  std::mt19937_64 rng(seed);
  bool have = false;
  double best = 0.0;
  std::uint64_t best_mask = 0;

  const bool track_unique = total <= kNoReplacementBudget;
  std::unordered_set<std::uint64_t> seen;
  std::uint64_t drawn = 0;
  while (drawn < num_samples) {
    const std::uint64_t mask = random_subset(rng, k, alpha);
    if (track_unique && !seen.insert(mask).second) continue;
    ++drawn;
    consider(f.loss(SubsetMask{mask, k}), mask, sign, have, best, best_mask);
  }
  return {best, SubsetMask{best_mask, k}};
}

double sample_mean_loss(const SetFunction& f, int alpha,
                        std::uint64_t num_samples, std::uint64_t seed) {
  const int k = f.ground_size();
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < num_samples; ++i) {
    sum += f.loss(SubsetMask{random_subset(rng, k, alpha), k});
  }
  return sum / static_cast<double>(num_samples);
}

AnnealSchedule default_schedule(const SetFunction& f, int alpha,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ull);
  const int k = f.ground_size();
  constexpr int kProbes = 32;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const double v = f.loss(SubsetMask{random_subset(rng, k, alpha), k});
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / kProbes;
  const double var = std::max(0.0, sumsq / kProbes - mean * mean);
  AnnealSchedule sched;
  sched.initial_temp = std::max(std::sqrt(var), 1e-3);
  return sched;
}

HeuristicResult anneal_extreme_bipartition(const SetFunction& f, int alpha,
                                           const AnnealSchedule& sched,
                                           std::uint64_t seed, int sign) {
  const int k = f.ground_size();
  if (alpha < 1 || alpha > k)
    throw std::invalid_argument("alpha out of range");
  if (!(sched.cooling > 0.0 && sched.cooling < 1.0))
    throw std::invalid_argument("cooling must lie strictly inside (0,1)");

  bool have = false;
  double best = 0.0;
  std::uint64_t best_mask = 0;

  for (int restart = 0; restart < sched.restarts; ++restart) {
    // Independent seed-derived stream per restart.
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(restart + 1));
    std::uint64_t cur = random_subset(rng, k, alpha);
    double cur_v = f.loss(SubsetMask{cur, k});
    consider(cur_v, cur, sign, have, best, best_mask);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double floor_temp = std::max(sched.initial_temp * 1e-4, 1e-300);
    for (double temp = sched.initial_temp; temp >= floor_temp;
         temp *= sched.cooling) {
      for (int step = 0; step < sched.steps_per_temp; ++step) {
        if (alpha == k) break;  // only one subset exists
        // Swap one failed index with one surviving index.
        std::uniform_int_distribution<int> pick_out(0, alpha - 1);
        std::uniform_int_distribution<int> pick_in(0, k - alpha - 1);
        int out_rank = pick_out(rng);
        int in_rank = pick_in(rng);
        int out_idx = -1, in_idx = -1;
        for (int i = 0; i < k; ++i) {
          if ((cur >> i) & 1) {
            if (out_rank-- == 0) out_idx = i;
          } else {
            if (in_rank-- == 0) in_idx = i;
          }
        }
        const std::uint64_t cand =
            (cur & ~(std::uint64_t{1} << out_idx)) | (std::uint64_t{1} << in_idx);
        const double cand_v = f.loss(SubsetMask{cand, k});
        const double delta = sign * (cand_v - cur_v);
        if (delta <= 0 || unif(rng) < std::exp(-delta / temp)) {
          cur = cand;
          cur_v = cand_v;
          consider(cur_v, cur, sign, have, best, best_mask);
        }
      }
    }
  }
  return {best, SubsetMask{best_mask, k}};
}

ViolationReport monotonicity_check(const BackboneSpectrum& spectrum) {
  ViolationReport report;
  double prev = 0.0;
  for (int i = 0; i < spectrum.scales(); ++i) {
    const double v = spectrum.alpha_synergy[static_cast<std::size_t>(i)];
    if (v < prev - 1e-9) report.violations.push_back({i + 1, v, prev});
    prev = v;
  }
  return report;
}

BackboneSpectrum enforce_monotone(const BackboneSpectrum& spectrum) {
  BackboneSpectrum out = spectrum;
  double running = 0.0;
  for (double& v : out.alpha_synergy) {
    running = std::max(running, v);
    v = running;
  }
  out.partial_atoms = partial_atoms(out.alpha_synergy);
  out.monotone_violations.clear();
  out.repaired = true;
  return out;
}

}  // namespace backbone
