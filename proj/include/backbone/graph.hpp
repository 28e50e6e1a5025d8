#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "backbone/engine.hpp"
#include "backbone/set_function.hpp"

namespace backbone {

/// Non-negative weighted graph without self-loops or duplicate edges.
/// Directed graphs are accepted but flagged experimental.
struct WeightedGraph {
  struct Edge {
    int u, v;
    double w;
  };
  int num_nodes = 0;
  std::vector<Edge> edges;
  bool undirected = true;

  void validate() const;
  int num_edges() const { return static_cast<int>(edges.size()); }

  /// Adjacency with the edges indexed by `surviving` present (all edges
  /// if the mask covers the full edge set). Undirected graphs get a
  /// symmetric matrix.
  Eigen::MatrixXd adjacency(const SubsetMask& surviving) const;
  Eigen::MatrixXd adjacency() const;
};

/// e^M to elementwise tolerance tol. Symmetric input goes through an
/// eigendecomposition; anything else through scaling-and-squaring with a
/// truncated series.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M,
                                   double tol = 1e-12);

struct CommunicabilityResult {
  Eigen::MatrixXd matrix;
  double mean_offdiagonal = 0.0;
};

/// e^M of the adjacency plus the mean over all ordered off-diagonal
/// pairs. The diagonal is excluded so the empty graph scores 0.
CommunicabilityResult communicability(const WeightedGraph& g);

/// Mean off-diagonal communicability of the survivor graph, as a raw set
/// function over the edge list.
SetFunction edge_failure_setfunction(const WeightedGraph& g);

/// Backbone of the communicability under edge failures. Exact sweeps are
/// capped at 20 edges; larger graphs need a heuristic strategy.
BackboneSpectrum structural_synergy_backbone(const WeightedGraph& g,
                                             AggregatorKind agg,
                                             const SearchStrategy& strat,
                                             int threads = 1);

}  // namespace backbone
