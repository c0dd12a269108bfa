// Test-only instance generators and brute-force oracles. The oracles are
// independent of the library's search code: path enumeration by DFS, plain
// summation for lengths.
#pragma once

#include <algorithm>
#include <functional>
#include <tuple>
#include <vector>

#include "tprobe/adversarial.hpp"
#include "tprobe/graph.hpp"
#include "tprobe/harness.hpp"
#include "tprobe/rng.hpp"

namespace testsupport {

inline tprobe::WeightedGraph path_graph(int n, double w = 1.0) {
  std::vector<std::tuple<tprobe::VertexId, tprobe::VertexId, double>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, w);
  return tprobe::WeightedGraph::build(n, edges, false);
}

inline tprobe::WeightedGraph cycle_graph(int n, double w = 1.0) {
  std::vector<std::tuple<tprobe::VertexId, tprobe::VertexId, double>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n, w);
  return tprobe::WeightedGraph::build(n, edges, false);
}

// Random spanning tree plus extra edges; weights uniform in [0.5, 2.5].
inline tprobe::WeightedGraph random_connected_graph(int n, int extra_edges, std::uint64_t seed) {
  tprobe::Rng rng(tprobe::derive_seed(seed, 0xc0ffee));
  std::vector<std::tuple<tprobe::VertexId, tprobe::VertexId, double>> edges;
  for (int v = 1; v < n; ++v) {
    const auto u = static_cast<tprobe::VertexId>(rng.next_below(static_cast<std::uint64_t>(v)));
    edges.emplace_back(u, v, rng.next_in(0.5, 2.5));
  }
  for (int k = 0; k < extra_edges; ++k) {
    const auto u = static_cast<tprobe::VertexId>(rng.next_below(static_cast<std::uint64_t>(n)));
    const auto v = static_cast<tprobe::VertexId>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    edges.emplace_back(u, v, rng.next_in(0.5, 2.5));
  }
  return tprobe::WeightedGraph::build(n, edges, false);
}

// The six built-in instance families used by the cross-module property
// checks. Index selects the family; seed varies the random one.
inline tprobe::WeightedGraph family_instance(int family, std::uint64_t seed) {
  switch (family % 6) {
    case 0: return tprobe::generate_grid(5, 6, 1.0);
    case 1: return *tprobe::generate_highway_grid(6, 6, 1.0, {2}, 0.25, 3).graph;
    case 2: return *tprobe::generate_chain(12, seed).base;
    case 3: return path_graph(14);
    case 4: return cycle_graph(11);
    default: return random_connected_graph(16, 10, seed);
  }
}

// All simple s-t paths by DFS; parallel edges give distinct paths.
inline std::vector<tprobe::Path> enumerate_simple_paths(const tprobe::WeightedGraph& g,
                                                        tprobe::VertexId s, tprobe::VertexId t) {
  std::vector<tprobe::Path> found;
  std::vector<char> visited(static_cast<size_t>(g.vertex_count), 0);
  tprobe::Path current;
  current.vertices.push_back(s);
  visited[static_cast<size_t>(s)] = 1;

  std::function<void(tprobe::VertexId)> dfs = [&](tprobe::VertexId u) {
    if (u == t) {
      found.push_back(current);
      return;
    }
    for (const tprobe::HalfEdge& he : g.adj[static_cast<size_t>(u)]) {
      if (visited[static_cast<size_t>(he.to)]) continue;
      visited[static_cast<size_t>(he.to)] = 1;
      current.vertices.push_back(he.to);
      current.edges.push_back(he.id);
      dfs(he.to);
      current.vertices.pop_back();
      current.edges.pop_back();
      visited[static_cast<size_t>(he.to)] = 0;
    }
  };
  dfs(s);
  return found;
}

// Exact s-t distance by path enumeration; +inf when unreachable.
inline double brute_shortest(const tprobe::WeightedGraph& g, std::span<const double> weights,
                             tprobe::VertexId s, tprobe::VertexId t) {
  if (s == t) return 0.0;
  double best = tprobe::kInfiniteDistance;
  for (const tprobe::Path& p : enumerate_simple_paths(g, s, t)) {
    double len = 0.0;
    for (tprobe::EdgeId e : p.edges) len += weights[static_cast<size_t>(e)];
    best = std::min(best, len);
  }
  return best;
}

}  // namespace testsupport
