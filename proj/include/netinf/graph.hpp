#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netinf/errors.hpp"
#include "netinf/random.hpp"
#include "netinf/types.hpp"

namespace netinf {

/// Undirected weighted edge; endpoints are 0-based with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted undirected graph without self-loops or duplicate edges.
///
/// Node ids are 0-based internally (file formats use 1-based ids, see
/// graph_io). Edges are stored once with i < j, sorted lexicographically;
/// zero-weight edges are dropped on construction and negative weights are
/// rejected.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 2) throw DomainError("Graph: node count must be at least 2");
    for (Edge& e : edges_) {
      if (e.i > e.j) std::swap(e.i, e.j);
      if (e.i == e.j)
        throw DomainError("Graph: self-loop on node " + std::to_string(e.i + 1));
      if (e.i < 0 || e.j >= n_)
        throw IndexError("Graph: edge endpoint outside 1.." + std::to_string(n_));
      if (e.weight < 0.0) throw DomainError("Graph: negative edge weight");
    }
    std::erase_if(edges_, [](const Edge& e) { return e.weight == 0.0; });
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    for (std::size_t k = 1; k < edges_.size(); ++k)
      if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
        throw DomainError("Graph: duplicate edge (" + std::to_string(edges_[k].i + 1) + "," +
                          std::to_string(edges_[k].j + 1) + ")");
  }

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  Matrix adjacency() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (const Edge& e : edges_) {
      a(e.i, e.j) = e.weight;
      a(e.j, e.i) = e.weight;
    }
    return a;
  }

  bool connected() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (const Edge& e : edges_) {
      adj[static_cast<std::size_t>(e.i)].push_back(e.j);
      adj[static_cast<std::size_t>(e.j)].push_back(e.i);
    }
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(u)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == n_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Edge-weight distribution for random graph generation.
struct WeightDist {
  enum class Kind { Unit, Uniform };
  Kind kind = Kind::Unit;
  double lo = 1.0;
  double hi = 1.0;

  static WeightDist unit() { return {}; }
  static WeightDist uniform(double a, double b) {
    if (!(0.0 < a && a <= b)) throw DomainError("WeightDist::uniform: need 0 < a <= b");
    return {Kind::Uniform, a, b};
  }
};

/// Samples a connected Erdos-Renyi graph: each unordered pair is an edge
/// independently with probability p. Resamples (up to 1000 attempts, each
/// from its own derived seed) until the draw is connected; a pure function
/// of (n, p, weight_dist, seed).
inline Graph erdos_renyi(int n, double p, const WeightDist& weight_dist, std::uint64_t seed) {
  if (n < 2) throw DomainError("erdos_renyi: need n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("erdos_renyi: need 0 < p <= 1");

  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto rng = make_rng(derive_seed(seed, {stream::kErdosRenyi, static_cast<std::uint64_t>(attempt)}));
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    std::uniform_real_distribution<double> weight(weight_dist.lo, weight_dist.hi);

    std::vector<Edge> edges;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (unit01(rng) < p) {
          double w = weight_dist.kind == WeightDist::Kind::Unit ? 1.0 : weight(rng);
          edges.push_back({i, j, w});
        }
      }
    }
    Graph g(n, std::move(edges));
    if (g.connected()) return g;
  }
  throw ConnectivityError("erdos_renyi: no connected sample in 1000 attempts (p too small for n?)");
}

}  // namespace netinf
