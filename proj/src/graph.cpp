#include "backbone/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace backbone {

void WeightedGraph::validate() const {
  if (num_nodes <= 0) throw std::invalid_argument("graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= num_nodes || e.v < 0 || e.v >= num_nodes)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
    if (!(e.w >= 0))
      throw std::invalid_argument(
          "negative edge weight voids the monotonicity desideratum");
    std::pair<int, int> key =
        undirected ? std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v))
                   : std::make_pair(e.u, e.v);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge");
  }
}

Eigen::MatrixXd WeightedGraph::adjacency(const SubsetMask& surviving) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(num_nodes, num_nodes);
  for (int i = 0; i < num_edges(); ++i) {
    if (!surviving.contains(i)) continue;
    const Edge& e = edges[static_cast<std::size_t>(i)];
    M(e.u, e.v) = e.w;
    if (undirected) M(e.v, e.u) = e.w;
  }
  return M;
}

Eigen::MatrixXd WeightedGraph::adjacency() const {
  return adjacency(SubsetMask::full_set(num_edges()));
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix must be square");
  if (!M.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  const Eigen::Index n = M.rows();
  if (n == 0) return M;

  const bool symmetric =
      (M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + M.cwiseAbs().maxCoeff());
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    return es.eigenvectors() *
           es.eigenvalues().array().exp().matrix().asDiagonal() *
           es.eigenvectors().transpose();
  }

  // Scaling and squaring with a truncated Taylor series on M / 2^s.
  const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::pow(2.0, s) > 0.5) ++s;
  const Eigen::MatrixXd A = M / std::pow(2.0, s);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int i = 1; i <= 64; ++i) {
    term = (term * A) / static_cast<double>(i);
    result += term;
    if (term.cwiseAbs().maxCoeff() < tol * 0.5) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

CommunicabilityResult communicability(const WeightedGraph& g) {
  g.validate();
  CommunicabilityResult out;
  out.matrix = matrix_exponential(g.adjacency());
  const int n = g.num_nodes;
  if (n > 1) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) sum += out.matrix(i, j);
    out.mean_offdiagonal = sum / static_cast<double>(n * (n - 1));
  }
  return out;
}

SetFunction edge_failure_setfunction(const WeightedGraph& g) {
  g.validate();
  const int m = g.num_edges();
  const int n = g.num_nodes;
  auto raw = [g, n](const SubsetMask& surviving) {
    if (n <= 1) return 0.0;
    const Eigen::MatrixXd E = matrix_exponential(g.adjacency(surviving));
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) sum += E(i, j);
    return sum / static_cast<double>(n * (n - 1));
  };
  return SetFunction::from_raw(m, std::move(raw), "communicability");
}

BackboneSpectrum structural_synergy_backbone(const WeightedGraph& g,
                                             AggregatorKind agg,
                                             const SearchStrategy& strat,
                                             int threads) {
  g.validate();
  if (g.num_edges() < 1)
    throw std::invalid_argument("graph needs at least one edge");
  if (is_exact(strat) && g.num_edges() > 20)
    throw std::invalid_argument(
        "exact sweep capped at 20 edges; use a sampled or annealed strategy");
  return compute_backbone(edge_failure_setfunction(g), agg, strat, threads);
}

}  // namespace backbone
