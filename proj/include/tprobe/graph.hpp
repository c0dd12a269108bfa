// Weighted multigraph with stable edge ids, plus the shortest-path, ball and
// induced-subgraph primitives the rest of the library builds on.
//
// Edge ids survive subgraph extraction: a weight vector indexed by edge id
// can be shared between a graph, its subgraphs, and any re-weighted copy.
// Shortest-path searches break ties deterministically (smallest predecessor
// vertex id, then smallest edge id), so identical inputs reproduce identical
// paths byte for byte.
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "tprobe/errors.hpp"

namespace tprobe {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

struct Edge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;
  double weight = 0.0;
};

struct HalfEdge {
  VertexId to = 0;
  EdgeId id = 0;
  double weight = 0.0;
};

// Immutable after construction; safe for concurrent reads.
// Parallel edges and self-loops are allowed (self-loops never appear on a
// shortest path since all weights are positive). Zero or negative weights
// are rejected.
struct WeightedGraph {
  int vertex_count = 0;
  bool directed = false;
  std::vector<Edge> edges;                 // unique ids, not necessarily dense
  std::vector<std::vector<HalfEdge>> adj;  // out-adjacency; both directions if undirected

  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edge_list, bool directed);

  // Builds a graph with dense edge ids 0..m-1 assigned in input order.
  static WeightedGraph build(int n, const std::vector<std::tuple<VertexId, VertexId, double>>& edge_list,
                             bool directed = false);

  int edge_count() const { return static_cast<int>(edges.size()); }

  // One past the largest edge id (0 for an edgeless graph). Weight vectors
  // indexed by id must have at least this many entries.
  int edge_id_bound() const { return id_bound_; }

  // Base weights laid out by edge id; ids absent from this graph get 0.
  std::vector<double> weights_by_id() const;

  // nullptr when no edge with this id exists in this (sub)graph.
  const Edge* find_edge(EdgeId id) const;

 private:
  int id_bound_ = 0;
  std::vector<std::int32_t> id_to_index_;  // -1 for absent ids
};

struct Path {
  std::vector<VertexId> vertices;  // k+1 entries for k edges; {s} for the empty path
  std::vector<EdgeId> edges;
  double length = 0.0;

  bool empty() const { return edges.empty(); }
};

struct Ball {
  VertexId center = 0;
  double radius = 0.0;
  std::vector<VertexId> members;  // sorted ascending; always includes center
  std::vector<char> member_mask;  // indexed by vertex id

  bool contains(VertexId v) const {
    return v >= 0 && v < static_cast<VertexId>(member_mask.size()) && member_mask[v] != 0;
  }
  int size() const { return static_cast<int>(members.size()); }
};

// Single-source search state. pred_vertex/pred_edge are -1 at the source and
// at unreached vertices.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<VertexId> pred_vertex;
  std::vector<EdgeId> pred_edge;
};

// Dijkstra from s. `weights` overrides base weights when non-empty (indexed
// by edge id, size >= edge_id_bound()). Search stops expanding past
// `radius_limit`; vertices farther than the limit keep dist = +inf.
ShortestPathTree shortest_path_tree(const WeightedGraph& g, VertexId s,
                                    std::span<const double> weights = {},
                                    double radius_limit = kInfiniteDistance);

// Exact s-t distance and one witnessing path with deterministic tie-breaks.
// Throws UnreachableError when t cannot be reached. s == t yields (0, {s}).
std::pair<double, Path> shortest_path(const WeightedGraph& g, VertexId s, VertexId t);
std::pair<double, Path> shortest_path(const WeightedGraph& g, std::span<const double> weights,
                                      VertexId s, VertexId t);

std::vector<double> distances_from(const WeightedGraph& g, VertexId s,
                                   std::span<const double> weights = {});

// {v : d(center, v) <= radius} by truncated Dijkstra.
Ball ball(const WeightedGraph& g, VertexId center, double radius,
          std::span<const double> weights = {});

// Keeps exactly the edges with both endpoints in `vertices`; retains parent
// edge ids and the parent vertex-id space (outside vertices become isolated).
WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> vertices);

// Sum of weights along the path's edge ids, in path order.
// Throws InvalidEdgeError when an id is out of range for `weights`.
double path_length(std::span<const double> weights, const Path& path);

// Extracts the s->t path from a search tree rooted at s. The caller must
// check tree.dist[t] is finite first.
Path extract_path(const ShortestPathTree& tree, VertexId s, VertexId t);

// True when `path` is a well-formed s-t walk in g: vertices/edges aligned,
// every edge exists and joins its neighbours in sequence.
bool is_valid_path(const WeightedGraph& g, const Path& path, VertexId s, VertexId t);

}  // namespace tprobe
