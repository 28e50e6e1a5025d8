#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "backbone/distribution.hpp"
#include "backbone/gaussian.hpp"
#include "backbone/graph.hpp"
#include "backbone/measures.hpp"

namespace backbone::io {

/// JSON object with "variables", "alphabet_sizes", and "pmf" as a list
/// of {"state": [ints], "p": real}; absent states have probability 0.
JointDistribution load_distribution(const std::string& path);

/// CSV edge list with header u,v,w and zero-based node indices. Node
/// count is max index + 1 unless overridden.
WeightedGraph load_graph(const std::string& path, int num_nodes_override = -1);

/// JSON object with "mean", "covariance", and "points" (sample points,
/// one spectrum each), optional "weights" for the expected spectrum.
struct GaussianInput {
  GaussianModel model;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;  // empty = uniform over points
};
GaussianInput load_gaussian(const std::string& path);

struct ReportHeader {
  std::string measure;
  std::string aggregator;
  std::string strategy;
  std::uint64_t seed = 0;
  int ground_size = 0;
};

/// Spectrum rows as JSON: header fields plus a list of {"alpha",
/// "synergy", "partial", "winner", "violation"}. Partial atoms within
/// 1e-9 of a negative zero are clamped in the rows; raw values ride
/// along under "raw_partial".
std::string spectrum_to_json(const ReportHeader& header,
                             const BackboneSpectrum& spectrum);

/// Divergence report: atoms, total, and the two constituent spectra.
std::string divergence_to_json(const ReportHeader& header,
                               const DivergenceSpectrum& divergence);

/// Plot-ready CSV: columns alpha, synergy, partial, violation at 12
/// significant digits.
std::string spectrum_to_csv(const BackboneSpectrum& spectrum);
std::string divergence_to_csv(const DivergenceSpectrum& divergence);

/// Non-fatal diagnostics for an input file; every problem is listed.
struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  std::vector<std::string> info;
  bool ok() const { return errors.empty(); }
};
Diagnostics validate_input(const std::string& path);

}  // namespace backbone::io
