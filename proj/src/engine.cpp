#include "backbone/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "backbone/heuristic.hpp"

namespace backbone {

std::string to_string(AggregatorKind agg) {
  switch (agg) {
    case AggregatorKind::Min: return "min";
    case AggregatorKind::Max: return "max";
    case AggregatorKind::Mean: return "mean";
  }
  return "?";
}

AggregatorKind aggregator_from_string(const std::string& s) {
  if (s == "min") return AggregatorKind::Min;
  if (s == "max") return AggregatorKind::Max;
  if (s == "mean") return AggregatorKind::Mean;
  throw std::invalid_argument("unknown aggregator: " + s);
}

std::string strategy_tag(const SearchStrategy& strat) {
  if (std::holds_alternative<ExactStrategy>(strat)) return "EXACT";
  if (const auto* s = std::get_if<SampledStrategy>(&strat)) {
    return "SAMPLED(" + std::to_string(s->num_samples) + "," +
           std::to_string(s->seed) + ")";
  }
  const auto& a = std::get<AnnealedStrategy>(strat);
  return "ANNEALED(T0=" +
         (a.auto_temp ? std::string("auto")
                      : std::to_string(a.schedule.initial_temp)) +
         ",cool=" + std::to_string(a.schedule.cooling) +
         ",steps=" + std::to_string(a.schedule.steps_per_temp) +
         ",restarts=" + std::to_string(a.schedule.restarts) + "," +
         std::to_string(a.seed) + ")";
}

SetFunction SetFunction::from_raw(int ground_size, Evaluator raw,
                                  std::string label) {
  const double f_full = raw(SubsetMask::full_set(ground_size));
  Evaluator loss = [raw, f_full, ground_size](const SubsetMask& failed) {
    return f_full - raw(failed.complement());
  };
  return SetFunction(ground_size, std::move(loss), std::move(raw),
                     std::move(label));
}

SetFunction SetFunction::from_loss(int ground_size, Evaluator loss,
                                   std::string label) {
  // Raw view assumes f(empty) = 0: f(S) = loss(all) - loss(ground \ S).
  Evaluator raw = [loss, ground_size](const SubsetMask& survivors) {
    const SubsetMask all = SubsetMask::full_set(ground_size);
    return loss(all) - loss(survivors.complement());
  };
  return SetFunction(ground_size, std::move(loss), std::move(raw),
                     std::move(label));
}

namespace {

constexpr double kMeanEnumerationCap = 1e6;
constexpr std::uint64_t kMeanSampleBudget = 1'000'000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct ChunkReduction {
  double extreme = 0.0;
  std::uint64_t extreme_mask = 0;
  bool has_extreme = false;
  double sum = 0.0;
};

/// Exhaustive sweep over size-alpha failed subsets, split into fixed
/// chunks. Per-chunk reductions are combined in chunk-index order so the
/// result is identical for any worker count.
AlphaResult exact_sweep(const SetFunction& f, int alpha, AggregatorKind agg,
                        int threads) {
  const int k = f.ground_size();
  const std::uint64_t total = binomial(k, alpha);
  const std::uint64_t num_chunks = std::min<std::uint64_t>(total, 256);
  std::vector<ChunkReduction> chunks(num_chunks);
  std::atomic<std::uint64_t> next_chunk{0};

  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= num_chunks) return;
      const std::uint64_t begin = total * c / num_chunks;
      const std::uint64_t end = total * (c + 1) / num_chunks;
      if (begin == end) continue;
      std::uint64_t mask = unrank_subset(k, alpha, begin);
      ChunkReduction red;
      for (std::uint64_t r = begin; r < end; ++r) {
        const double v = f.loss(SubsetMask{mask, k});
        red.sum += v;
        const bool better =
            !red.has_extreme ||
            (agg == AggregatorKind::Max ? v > red.extreme : v < red.extreme);
        if (better) {
          red.extreme = v;
          red.extreme_mask = mask;
          red.has_extreme = true;
        }
        if (r + 1 < end) next_subset_of_size(mask, k);
      }
      chunks[c] = red;
    }
  };

  const int nworkers = std::max(
      1, std::min<int>(threads, static_cast<int>(
                                    std::min<std::uint64_t>(num_chunks, 64))));
  std::vector<std::thread> pool;
  for (int t = 1; t < nworkers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (agg == AggregatorKind::Mean) {
    double sum = 0.0;
    for (const auto& c : chunks) sum += c.sum;
    return {sum / static_cast<double>(total), std::nullopt};
  }
  AlphaResult out;
  bool have = false;
  for (const auto& c : chunks) {
    if (!c.has_extreme) continue;
    const bool better =
        !have || (agg == AggregatorKind::Max ? c.extreme > out.value
                                             : c.extreme < out.value);
    if (better) {
      out.value = c.extreme;
      out.winner = SubsetMask{c.extreme_mask, k};
      have = true;
    }
  }
  return out;
}

}  // namespace

AlphaResult alpha_synergy(const SetFunction& f, int alpha, AggregatorKind agg,
                          const SearchStrategy& strat, int threads) {
  const int k = f.ground_size();
  if (alpha < 1 || alpha > k)
    throw std::invalid_argument("alpha out of range [1, ground_size]");

  if (std::holds_alternative<ExactStrategy>(strat)) {
    if (agg == AggregatorKind::Mean &&
        static_cast<double>(binomial(k, alpha)) > kMeanEnumerationCap) {
      const double v = sample_mean_loss(f, alpha, kMeanSampleBudget,
                                        splitmix64(static_cast<std::uint64_t>(alpha)));
      return {v, std::nullopt};
    }
    return exact_sweep(f, alpha, agg, threads);
  }

  if (const auto* s = std::get_if<SampledStrategy>(&strat)) {
    const std::uint64_t seed = splitmix64(s->seed ^ (static_cast<std::uint64_t>(alpha) << 32));
    if (agg == AggregatorKind::Mean)
      return {sample_mean_loss(f, alpha, s->num_samples, seed), std::nullopt};
    const int sign = agg == AggregatorKind::Max ? -1 : +1;
    HeuristicResult r = sample_extreme_bipartition(f, alpha, s->num_samples, seed, sign);
    return {r.value, r.winner};
  }

  const auto& a = std::get<AnnealedStrategy>(strat);
  const std::uint64_t seed = splitmix64(a.seed ^ (static_cast<std::uint64_t>(alpha) << 32));
  if (agg == AggregatorKind::Mean) {
    const std::uint64_t n = static_cast<std::uint64_t>(a.schedule.restarts) *
                            static_cast<std::uint64_t>(a.schedule.steps_per_temp) * 64;
    return {sample_mean_loss(f, alpha, n, seed), std::nullopt};
  }
  const AnnealSchedule sched =
      a.auto_temp ? default_schedule(f, alpha, seed) : a.schedule;
  const int sign = agg == AggregatorKind::Max ? -1 : +1;
  HeuristicResult r = anneal_extreme_bipartition(f, alpha, sched, seed, sign);
  return {r.value, r.winner};
}

std::vector<double> partial_atoms(const std::vector<double>& alpha_synergy) {
  std::vector<double> atoms(alpha_synergy.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < alpha_synergy.size(); ++i) {
    atoms[i] = alpha_synergy[i] - prev;
    prev = alpha_synergy[i];
  }
  return atoms;
}

BackboneSpectrum compute_backbone(const SetFunction& f, AggregatorKind agg,
                          const SearchStrategy& strat, int threads) {
  const int k = f.ground_size();
  BackboneSpectrum spectrum;
  spectrum.aggregator = agg;
  spectrum.strategy = strategy_tag(strat);
  spectrum.alpha_synergy.reserve(static_cast<std::size_t>(k));
  for (int alpha = 1; alpha <= k; ++alpha) {
    AlphaResult r = alpha_synergy(f, alpha, agg, strat, threads);
    spectrum.alpha_synergy.push_back(r.value);
    spectrum.winning_subsets.push_back(r.winner);
  }
  spectrum.partial_atoms = partial_atoms(spectrum.alpha_synergy);
  double prev = 0.0;
  for (int alpha = 1; alpha <= k; ++alpha) {
    const double v = spectrum.alpha_synergy[static_cast<std::size_t>(alpha - 1)];
    if (v < prev - 1e-9) spectrum.monotone_violations.push_back(alpha);
    prev = v;
  }
  return spectrum;
}

double robustness(const SetFunction& f, int threads) {
  const double f_full = f.raw(SubsetMask::full_set(f.ground_size()));
  const AlphaResult syn1 =
      alpha_synergy(f, 1, AggregatorKind::Min, ExactStrategy{}, threads);
  return f_full - syn1.value;
}

DesiderataReport verify_desiderata(const SetFunction& f) {
  const int k = f.ground_size();
  if (k > 20)
    throw std::invalid_argument("ground set too large for exhaustive check");
  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<double> raw(total);
  for (std::uint64_t s = 0; s < total; ++s) raw[s] = f.raw(SubsetMask{s, k});

  DesiderataReport report;
  for (std::uint64_t s = 0; s < total; ++s) {
    if (raw[s] < -1e-9)
      report.negativity.push_back({SubsetMask{s, k}, raw[s]});
    for (int i = 0; i < k; ++i) {
      if ((s >> i) & 1) continue;
      const std::uint64_t sup = s | (std::uint64_t{1} << i);
      if (raw[s] > raw[sup] + 1e-9) {
        report.monotonicity.push_back(
            {SubsetMask{s, k}, SubsetMask{sup, k}, raw[s], raw[sup]});
      }
    }
  }
  return report;
}

}  // namespace backbone
