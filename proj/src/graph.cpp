#include "tprobe/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace tprobe {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edge_list, bool is_directed)
    : vertex_count(n), directed(is_directed), edges(std::move(edge_list)) {
  if (n < 0) throw std::invalid_argument("vertex_count must be >= 0");
  adj.assign(static_cast<size_t>(n), {});
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("edge endpoint out of range: edge " + std::to_string(e.id));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weight must be positive and finite: edge " +
                                  std::to_string(e.id));
    if (e.id < 0) throw std::invalid_argument("edge id must be >= 0");
    id_bound_ = std::max(id_bound_, e.id + 1);
  }
  id_to_index_.assign(static_cast<size_t>(id_bound_), -1);
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (id_to_index_[static_cast<size_t>(e.id)] != -1)
      throw std::invalid_argument("duplicate edge id " + std::to_string(e.id));
    id_to_index_[static_cast<size_t>(e.id)] = static_cast<std::int32_t>(i);
    adj[static_cast<size_t>(e.u)].push_back({e.v, e.id, e.weight});
    if (!directed && e.u != e.v) adj[static_cast<size_t>(e.v)].push_back({e.u, e.id, e.weight});
  }
}

WeightedGraph WeightedGraph::build(int n,
                                   const std::vector<std::tuple<VertexId, VertexId, double>>& edge_list,
                                   bool directed) {
  std::vector<Edge> edges;
  edges.reserve(edge_list.size());
  EdgeId next_id = 0;
  for (const auto& [u, v, w] : edge_list) edges.push_back({next_id++, u, v, w});
  return WeightedGraph(n, std::move(edges), directed);
}

std::vector<double> WeightedGraph::weights_by_id() const {
  std::vector<double> w(static_cast<size_t>(id_bound_), 0.0);
  for (const Edge& e : edges) w[static_cast<size_t>(e.id)] = e.weight;
  return w;
}

const Edge* WeightedGraph::find_edge(EdgeId id) const {
  if (id < 0 || id >= id_bound_) return nullptr;
  std::int32_t idx = id_to_index_[static_cast<size_t>(id)];
  return idx < 0 ? nullptr : &edges[static_cast<size_t>(idx)];
}

namespace {

struct QueueEntry {
  double dist;
  VertexId vertex;
  // min-heap on (dist, vertex id): equal-distance vertices settle in id order
  bool operator>(const QueueEntry& o) const {
    if (dist != o.dist) return dist > o.dist;
    return vertex > o.vertex;
  }
};

double edge_weight(const HalfEdge& he, std::span<const double> weights) {
  if (weights.empty()) return he.weight;
  if (he.id < 0 || static_cast<size_t>(he.id) >= weights.size())
    throw InvalidEdgeError("edge id " + std::to_string(he.id) + " outside weight vector");
  return weights[static_cast<size_t>(he.id)];
}

}  // namespace

ShortestPathTree shortest_path_tree(const WeightedGraph& g, VertexId s,
                                    std::span<const double> weights, double radius_limit) {
  if (s < 0 || s >= g.vertex_count) throw std::invalid_argument("source vertex out of range");
  ShortestPathTree tree;
  tree.dist.assign(static_cast<size_t>(g.vertex_count), kInfiniteDistance);
  tree.pred_vertex.assign(static_cast<size_t>(g.vertex_count), -1);
  tree.pred_edge.assign(static_cast<size_t>(g.vertex_count), -1);
  tree.dist[static_cast<size_t>(s)] = 0.0;

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> pq;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > tree.dist[static_cast<size_t>(u)]) continue;
    if (d > radius_limit) break;
    for (const HalfEdge& he : g.adj[static_cast<size_t>(u)]) {
      const double w = edge_weight(he, weights);
      const double nd = d + w;
      if (nd > radius_limit) continue;
      const size_t vi = static_cast<size_t>(he.to);
      if (nd < tree.dist[vi]) {
        tree.dist[vi] = nd;
        tree.pred_vertex[vi] = u;
        tree.pred_edge[vi] = he.id;
        pq.push({nd, he.to});
      } else if (nd == tree.dist[vi]) {
        // All candidate predecessors relax before he.to settles (weights are
        // strictly positive), so this picks the lexicographic minimum.
        if (u < tree.pred_vertex[vi] ||
            (u == tree.pred_vertex[vi] && he.id < tree.pred_edge[vi])) {
          tree.pred_vertex[vi] = u;
          tree.pred_edge[vi] = he.id;
        }
      }
    }
  }
  return tree;
}

Path extract_path(const ShortestPathTree& tree, VertexId s, VertexId t) {
  Path path;
  path.length = tree.dist[static_cast<size_t>(t)];
  VertexId cur = t;
  while (cur != s) {
    path.vertices.push_back(cur);
    path.edges.push_back(tree.pred_edge[static_cast<size_t>(cur)]);
    cur = tree.pred_vertex[static_cast<size_t>(cur)];
  }
  path.vertices.push_back(s);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

std::pair<double, Path> shortest_path(const WeightedGraph& g, std::span<const double> weights,
                                      VertexId s, VertexId t) {
  if (t < 0 || t >= g.vertex_count) throw std::invalid_argument("target vertex out of range");
  if (s == t) return {0.0, Path{{s}, {}, 0.0}};
  ShortestPathTree tree = shortest_path_tree(g, s, weights);
  if (tree.dist[static_cast<size_t>(t)] == kInfiniteDistance)
    throw UnreachableError("no path from " + std::to_string(s) + " to " + std::to_string(t));
  return {tree.dist[static_cast<size_t>(t)], extract_path(tree, s, t)};
}

std::pair<double, Path> shortest_path(const WeightedGraph& g, VertexId s, VertexId t) {
  return shortest_path(g, {}, s, t);
}

std::vector<double> distances_from(const WeightedGraph& g, VertexId s,
                                   std::span<const double> weights) {
  return shortest_path_tree(g, s, weights).dist;
}

Ball ball(const WeightedGraph& g, VertexId center, double radius, std::span<const double> weights) {
  if (radius < 0.0) throw std::invalid_argument("ball radius must be >= 0");
  ShortestPathTree tree = shortest_path_tree(g, center, weights, radius);
  Ball b;
  b.center = center;
  b.radius = radius;
  b.member_mask.assign(static_cast<size_t>(g.vertex_count), 0);
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    if (tree.dist[static_cast<size_t>(v)] <= radius) {
      b.member_mask[static_cast<size_t>(v)] = 1;
      b.members.push_back(v);
    }
  }
  return b;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> vertices) {
  std::vector<char> keep(static_cast<size_t>(g.vertex_count), 0);
  for (VertexId v : vertices) {
    if (v < 0 || v >= g.vertex_count) throw std::invalid_argument("subgraph vertex out of range");
    keep[static_cast<size_t>(v)] = 1;
  }
  std::vector<Edge> kept;
  for (const Edge& e : g.edges)
    if (keep[static_cast<size_t>(e.u)] && keep[static_cast<size_t>(e.v)]) kept.push_back(e);
  return WeightedGraph(g.vertex_count, std::move(kept), g.directed);
}

double path_length(std::span<const double> weights, const Path& path) {
  double total = 0.0;
  for (EdgeId id : path.edges) {
    if (id < 0 || static_cast<size_t>(id) >= weights.size())
      throw InvalidEdgeError("edge id " + std::to_string(id) + " outside weight vector");
    total += weights[static_cast<size_t>(id)];
  }
  return total;
}

bool is_valid_path(const WeightedGraph& g, const Path& path, VertexId s, VertexId t) {
  if (path.vertices.size() != path.edges.size() + 1) return false;
  if (path.vertices.empty()) return false;
  if (path.vertices.front() != s || path.vertices.back() != t) return false;
  for (size_t i = 0; i < path.edges.size(); ++i) {
    const Edge* e = g.find_edge(path.edges[i]);
    if (e == nullptr) return false;
    const VertexId a = path.vertices[i];
    const VertexId b = path.vertices[i + 1];
    const bool forward = (e->u == a && e->v == b);
    const bool backward = (!g.directed && e->u == b && e->v == a);
    if (!forward && !backward) return false;
  }
  return true;
}

}  // namespace tprobe
