#include "backbone/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace backbone::io {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double clamp_atom(double v) { return (v < 0 && v > -1e-9) ? 0.0 : v; }

json spectrum_rows(const BackboneSpectrum& s) {
  json rows = json::array();
  for (int i = 0; i < s.scales(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    json row;
    row["alpha"] = i + 1;
    row["synergy"] = s.alpha_synergy[idx];
    row["partial"] = clamp_atom(s.partial_atoms[idx]);
    row["raw_partial"] = s.partial_atoms[idx];
    if (s.winning_subsets[idx])
      row["winner"] = s.winning_subsets[idx]->indices();
    else
      row["winner"] = nullptr;
    row["violation"] =
        std::find(s.monotone_violations.begin(), s.monotone_violations.end(),
                  i + 1) != s.monotone_violations.end();
    rows.push_back(std::move(row));
  }
  return rows;
}

json header_json(const ReportHeader& h) {
  return json{{"measure", h.measure},
              {"aggregator", h.aggregator},
              {"strategy", h.strategy},
              {"seed", h.seed},
              {"ground_size", h.ground_size}};
}

}  // namespace

JointDistribution load_distribution(const std::string& path) {
  const json j = read_json(path);
  std::vector<std::string> names = j.at("variables").get<std::vector<std::string>>();
  std::vector<int> alphabet = j.at("alphabet_sizes").get<std::vector<int>>();
  std::vector<std::pair<StateVector, double>> entries;
  for (const auto& e : j.at("pmf")) {
    entries.emplace_back(e.at("state").get<StateVector>(),
                         e.at("p").get<double>());
  }
  return JointDistribution::from_entries(std::move(names), std::move(alphabet),
                                         entries);
}

WeightedGraph load_graph(const std::string& path, int num_nodes_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty graph file");
  // Header must be u,v,w.
  {
    std::string h = line;
    h.erase(std::remove_if(h.begin(), h.end(),
                           [](char c) { return c == ' ' || c == '\r'; }),
            h.end());
    if (h != "u,v,w")
      throw std::runtime_error("graph CSV must start with header u,v,w");
  }
  WeightedGraph g;
  int max_node = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string cell;
    WeightedGraph::Edge e{};
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("bad edge row: " + line);
    e.u = std::stoi(cell);
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("bad edge row: " + line);
    e.v = std::stoi(cell);
    if (!std::getline(ss, cell, ',')) throw std::runtime_error("bad edge row: " + line);
    e.w = std::stod(cell);
    max_node = std::max({max_node, e.u, e.v});
    g.edges.push_back(e);
  }
  g.num_nodes = num_nodes_override > 0 ? num_nodes_override : max_node + 1;
  if (g.num_nodes <= 0) g.num_nodes = 1;
  g.validate();
  return g;
}

GaussianInput load_gaussian(const std::string& path) {
  const json j = read_json(path);
  GaussianInput in;
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto cov = j.at("covariance").get<std::vector<std::vector<double>>>();
  const int k = static_cast<int>(mean.size());
  in.model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), k);
  in.model.covariance.resize(k, k);
  if (static_cast<int>(cov.size()) != k)
    throw std::runtime_error("covariance row count mismatch");
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(cov[static_cast<std::size_t>(i)].size()) != k)
      throw std::runtime_error("covariance column count mismatch");
    for (int c = 0; c < k; ++c)
      in.model.covariance(i, c) = cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  }
  in.model.validate();
  for (const auto& p : j.at("points")) {
    const auto v = p.get<std::vector<double>>();
    if (static_cast<int>(v.size()) != k)
      throw std::runtime_error("point dimension mismatch");
    in.points.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), k));
  }
  if (j.contains("weights")) {
    in.weights = j.at("weights").get<std::vector<double>>();
    if (in.weights.size() != in.points.size())
      throw std::runtime_error("weights/points length mismatch");
  }
  return in;
}

std::string spectrum_to_json(const ReportHeader& header,
                             const BackboneSpectrum& spectrum) {
  json j;
  j["header"] = header_json(header);
  j["spectrum"] = spectrum_rows(spectrum);
  j["total"] = spectrum.total();
  j["repaired"] = spectrum.repaired;
  return j.dump(2);
}

std::string divergence_to_json(const ReportHeader& header,
                               const DivergenceSpectrum& divergence) {
  json j;
  j["header"] = header_json(header);
  json atoms = json::array();
  for (std::size_t i = 0; i < divergence.atoms.size(); ++i)
    atoms.push_back(json{{"alpha", i + 1}, {"atom", divergence.atoms[i]}});
  j["atoms"] = std::move(atoms);
  j["total"] = divergence.total;
  j["degenerate_target"] = divergence.degenerate_target;
  j["prior_spectrum"] = spectrum_rows(divergence.prior_spectrum);
  j["posterior_spectrum"] = spectrum_rows(divergence.posterior_spectrum);
  return j.dump(2);
}

std::string spectrum_to_csv(const BackboneSpectrum& spectrum) {
  std::string out = "alpha,synergy,partial,violation\n";
  for (int i = 0; i < spectrum.scales(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const bool bad =
        std::find(spectrum.monotone_violations.begin(),
                  spectrum.monotone_violations.end(),
                  i + 1) != spectrum.monotone_violations.end();
    out += std::to_string(i + 1) + "," + fmt12(spectrum.alpha_synergy[idx]) +
           "," + fmt12(clamp_atom(spectrum.partial_atoms[idx])) + "," +
           (bad || spectrum.repaired ? "1" : "0") + "\n";
  }
  return out;
}

std::string divergence_to_csv(const DivergenceSpectrum& divergence) {
  std::string out = "alpha,synergy,partial,violation\n";
  const auto& prior = divergence.prior_spectrum;
  const auto& post = divergence.posterior_spectrum;
  for (std::size_t i = 0; i < divergence.atoms.size(); ++i) {
    const double syn =
        prior.alpha_synergy.empty()
            ? 0.0
            : prior.alpha_synergy[i] - post.alpha_synergy[i];
    out += std::to_string(i + 1) + "," + fmt12(syn) + "," +
           fmt12(divergence.atoms[i]) + ",0\n";
  }
  return out;
}

Diagnostics validate_input(const std::string& path) {
  Diagnostics d;
  const bool is_csv = path.size() > 4 && path.substr(path.size() - 4) == ".csv";
  try {
    if (is_csv) {
      std::ifstream in(path);
      if (!in) {
        d.errors.push_back("cannot open " + path);
        return d;
      }
      std::string line;
      std::getline(in, line);
      int row = 1;
      int max_node = -1;
      int edges = 0;
      while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::istringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
            !std::getline(ss, c, ',')) {
          d.errors.push_back("row " + std::to_string(row) + ": expected u,v,w");
          continue;
        }
        try {
          const int u = std::stoi(a), v = std::stoi(b);
          const double w = std::stod(c);
          if (u == v)
            d.errors.push_back("row " + std::to_string(row) + ": self-loop at node " + a);
          if (w < 0)
            d.errors.push_back("row " + std::to_string(row) + ": negative weight on edge (" +
                               a + "," + b + ") violates the monotonicity desideratum");
          max_node = std::max({max_node, u, v});
          ++edges;
        } catch (const std::exception&) {
          d.errors.push_back("row " + std::to_string(row) + ": unparseable values");
        }
      }
      d.info.push_back("graph: " + std::to_string(max_node + 1) + " nodes, " +
                       std::to_string(edges) + " edges");
      return d;
    }

    const json j = read_json(path);
    if (j.contains("mean")) {
      load_gaussian(path);
      d.info.push_back("gaussian model: dimension " +
                       std::to_string(j.at("mean").size()) + ", " +
                       std::to_string(j.at("points").size()) + " points");
      return d;
    }
    const auto alphabet = j.at("alphabet_sizes").get<std::vector<int>>();
    double sum = 0.0;
    std::size_t support = 0;
    for (const auto& e : j.at("pmf")) {
      const auto state = e.at("state").get<StateVector>();
      const double p = e.at("p").get<double>();
      if (state.size() != alphabet.size())
        d.errors.push_back("state length mismatch in pmf entry");
      else
        for (std::size_t i = 0; i < state.size(); ++i)
          if (state[i] < 0 || state[i] >= alphabet[i])
            d.errors.push_back("symbol " + std::to_string(state[i]) +
                               " outside alphabet of variable " + std::to_string(i));
      if (p < 0) d.errors.push_back("negative probability in pmf");
      if (p > 0) ++support;
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTolerance)
      d.warnings.push_back("pmf sums to " + fmt12(sum) + " (deficit " +
                           fmt12(1.0 - sum) + ")");
    if (d.errors.empty() && d.warnings.empty()) {
      const JointDistribution dist = load_distribution(path);
      d.info.push_back("ok: k=" + std::to_string(dist.num_variables()) +
                       ", support=" + std::to_string(support) +
                       ", entropy=" + fmt12(expected_entropy(dist)) + " bits");
    }
  } catch (const std::exception& e) {
    d.errors.push_back(e.what());
  }
  return d;
}

}  // namespace backbone::io
