// Command-line front end: one binary, measure selection via --measure,
// machine-readable JSON/CSV spectra plus plot-ready CSV.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "backbone/heuristic.hpp"
#include "backbone/io.hpp"
#include "backbone/measures.hpp"

namespace {

using namespace backbone;

constexpr const char* kVersion = "0.1.0";

StateVector parse_state(const std::string& csv) {
  StateVector out;
  std::istringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stoi(cell));
  return out;
}

void scale_spectrum(BackboneSpectrum& s, double factor) {
  for (double& v : s.alpha_synergy) v *= factor;
  for (double& v : s.partial_atoms) v *= factor;
}

void scale_divergence(DivergenceSpectrum& d, double factor) {
  for (double& v : d.atoms) v *= factor;
  d.total *= factor;
  scale_spectrum(d.prior_spectrum, factor);
  scale_spectrum(d.posterior_spectrum, factor);
}

void write_or_fail(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backbone synergy decompositions of distributions and graphs"};
  app.set_version_flag("--version", kVersion);

  std::string measure, input_path, aggregator = "min";
  std::string output_path, plot_path, format = "json", local_csv, base = "2";
  std::uint64_t seed = 0;
  bool entropy_seed = false;
  std::uint64_t sample_n = 0;
  bool exact = false, anneal = false, do_validate = false, repair = false;
  double temp = 0.0, cooling = 0.95;
  int steps = 50, restarts = 4, threads = 1, target = -1, nodes = -1;
  std::string prior_path;

  app.add_option("--measure", measure,
                 "entropy | negentropy | total-correlation | kl | "
                 "mi-conditional | mi-joint | gaussian-entropy | communicability")
      ->required();
  app.add_option("--input", input_path, "input file (JSON pmf, graph CSV, or Gaussian JSON)")
      ->required();
  app.add_option("--aggregator", aggregator, "min|max|mean")->default_val("min");
  app.add_flag("--exact", exact, "exhaustive subset sweep (default)");
  app.add_option("--sample", sample_n, "random-sampling strategy with N draws per scale");
  app.add_flag("--anneal", anneal, "simulated-annealing strategy");
  app.add_option("--temp", temp, "annealing initial temperature (default: auto)");
  app.add_option("--cooling", cooling, "annealing cooling factor in (0,1)");
  app.add_option("--steps", steps, "annealing steps per temperature");
  app.add_option("--restarts", restarts, "annealing restarts");
  app.add_option("--seed", seed, "seed for all randomness");
  app.add_flag("--entropy-seed", entropy_seed, "seed from the system entropy source");
  app.add_option("--threads", threads, "worker threads (never changes results)");
  app.add_option("--base", base, "logarithm base for outputs: 2|e");
  app.add_option("--target", target, "target variable index (MI measures)");
  app.add_option("--local", local_csv, "comma-separated state for a per-state decomposition");
  app.add_flag("--enforce-monotone", repair, "repair heuristic monotonicity violations");
  app.add_option("--output", output_path, "report path (default: stdout)");
  app.add_option("--format", format, "json|csv");
  app.add_option("--plot-data", plot_path, "write plot-ready CSV here");
  app.add_flag("--validate", do_validate, "diagnose the input file and exit");
  app.add_option("--prior", prior_path, "prior distribution file (kl measure)");
  app.add_option("--nodes", nodes, "node count override for graph CSV");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("BACKBONE_THREADS");
      env && !app.count("--threads"))
    threads = std::atoi(env);
  if (threads < 1) threads = 1;

  if (do_validate) {
    const io::Diagnostics d = io::validate_input(input_path);
    for (const auto& e : d.errors) std::cout << "error: " << e << "\n";
    for (const auto& w : d.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& i : d.info) std::cout << i << "\n";
    return 0;
  }

  try {
    if (entropy_seed) seed = std::random_device{}();

    SearchStrategy strat = ExactStrategy{};
    if (sample_n > 0 && anneal) throw CLI::ValidationError("--sample and --anneal conflict");
    if (sample_n > 0) strat = SampledStrategy{sample_n, seed};
    if (anneal) {
      AnnealedStrategy a;
      a.schedule.cooling = cooling;
      a.schedule.steps_per_temp = steps;
      a.schedule.restarts = restarts;
      a.seed = seed;
      if (temp > 0)
        a.schedule.initial_temp = temp;
      else
        a.auto_temp = true;
      strat = a;
    }
    const AggregatorKind agg = aggregator_from_string(aggregator);
    const bool base_e = base == "e";
    if (!base_e && base != "2") throw CLI::ValidationError("--base must be 2 or e");
    const double discrete_factor = base_e ? std::numbers::ln2 : 1.0;
    const double nat_factor = base_e ? 1.0 : 1.0 / std::numbers::ln2;

    std::optional<StateVector> local;
    if (!local_csv.empty()) local = parse_state(local_csv);

    const auto t0 = std::chrono::steady_clock::now();

    io::ReportHeader header;
    header.measure = measure;
    header.aggregator = aggregator;
    header.strategy = strategy_tag(strat);
    header.seed = seed;

    std::string report_json, report_csv, plot_csv;

    auto finish_spectrum = [&](BackboneSpectrum spectrum, double factor) {
      scale_spectrum(spectrum, factor);
      if (repair && !spectrum.monotone_violations.empty())
        spectrum = enforce_monotone(spectrum);
      header.ground_size = spectrum.scales();
      report_json = io::spectrum_to_json(header, spectrum);
      report_csv = io::spectrum_to_csv(spectrum);
      plot_csv = report_csv;
    };
    auto finish_divergence = [&](DivergenceSpectrum div, double factor) {
      scale_divergence(div, factor);
      header.ground_size = static_cast<int>(div.atoms.size());
      report_json = io::divergence_to_json(header, div);
      report_csv = io::divergence_to_csv(div);
      plot_csv = report_csv;
    };

    if (measure == "communicability") {
      const WeightedGraph g = io::load_graph(input_path, nodes);
      finish_spectrum(structural_synergy_backbone(g, agg, strat, threads), 1.0);
    } else if (measure == "gaussian-entropy") {
      const io::GaussianInput in = io::load_gaussian(input_path);
      if (in.points.empty()) throw std::runtime_error("no sample points supplied");
      // Expected spectrum over the supplied points (weights optional).
      BackboneSpectrum sum;
      double wsum = 0.0;
      for (std::size_t i = 0; i < in.points.size(); ++i) {
        const double w = in.weights.empty() ? 1.0 : in.weights[i];
        SetFunction f = gaussian_entropy_loss(in.model, in.points[i]);
        BackboneSpectrum s = compute_backbone(f, agg, strat, threads);
        if (sum.alpha_synergy.empty()) {
          sum = s;
          scale_spectrum(sum, w);
          for (auto& m : sum.winning_subsets) m.reset();
        } else {
          for (int a = 0; a < s.scales(); ++a) {
            sum.alpha_synergy[static_cast<std::size_t>(a)] +=
                w * s.alpha_synergy[static_cast<std::size_t>(a)];
            sum.partial_atoms[static_cast<std::size_t>(a)] +=
                w * s.partial_atoms[static_cast<std::size_t>(a)];
          }
        }
        wsum += w;
      }
      scale_spectrum(sum, 1.0 / wsum);
      finish_spectrum(std::move(sum), nat_factor);
    } else {
      const JointDistribution dist = io::load_distribution(input_path);
      if (measure == "entropy") {
        finish_spectrum(local ? entropy_backbone_local(dist, *local, agg, strat, threads)
                              : entropy_backbone_expected(dist, agg, strat, threads),
                        discrete_factor);
      } else if (measure == "negentropy") {
        finish_divergence(local ? negentropy_backbone_local(dist, *local, agg, strat, threads)
                                : negentropy_backbone(dist, agg, strat, threads),
                          discrete_factor);
      } else if (measure == "total-correlation") {
        finish_divergence(
            local ? kl_backbone_local(dist, dist.product_of_marginals(), *local, agg, strat, threads)
                  : total_correlation_backbone(dist, agg, strat, threads),
            discrete_factor);
      } else if (measure == "kl") {
        if (prior_path.empty()) throw std::runtime_error("kl measure needs --prior FILE");
        const JointDistribution prior = io::load_distribution(prior_path);
        finish_divergence(local ? kl_backbone_local(dist, prior, *local, agg, strat, threads)
                                : kl_backbone(dist, prior, agg, strat, threads),
                          discrete_factor);
      } else if (measure == "mi-conditional" || measure == "mi-joint") {
        if (target < 0) throw std::runtime_error("MI measures need --target IDX");
        const MiFormulation form = measure == "mi-joint" ? MiFormulation::Joint
                                                         : MiFormulation::Conditional;
        finish_divergence(mi_backbone(dist, target, form, agg, strat, threads),
                          discrete_factor);
      } else {
        throw std::runtime_error("unknown measure: " + measure);
      }
    }

    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    (void)wall;

    const std::string& report = format == "csv" ? report_csv : report_json;
    if (format != "csv" && format != "json")
      throw std::runtime_error("--format must be json or csv");
    if (output_path.empty())
      std::cout << report << "\n";
    else
      write_or_fail(output_path, report);
    if (!plot_path.empty()) write_or_fail(plot_path, plot_csv);
    return 0;
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("capped") != std::string::npos ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
