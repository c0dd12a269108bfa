#include "tprobe/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tprobe {

WeightedGraph subdivide(const WeightedGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("subdivision factor must be >= 1");
  if (k == 1) return g;
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  edges.reserve(g.edges.size() * static_cast<size_t>(k));
  VertexId next_vertex = static_cast<VertexId>(g.vertex_count);
  for (const Edge& e : g.edges) {
    const double seg = e.weight / static_cast<double>(k);
    VertexId prev = e.u;
    for (int i = 1; i < k; ++i) {
      edges.emplace_back(prev, next_vertex, seg);
      prev = next_vertex++;
    }
    edges.emplace_back(prev, e.v, seg);
  }
  return WeightedGraph::build(next_vertex, edges, g.directed);
}

namespace {

// Greedy ball carving along a fixed wavefront: vertices are swept in order
// of distance from vertex 0 (ties to the smaller id, unreachable components
// last), and each still-uncovered vertex becomes a center. The sweep order
// is radius-independent, which keeps the cover slack stable across scales.
std::vector<VertexId> greedy_ball_cover(const WeightedGraph& g, double radius) {
  std::vector<VertexId> order(static_cast<size_t>(g.vertex_count));
  for (VertexId v = 0; v < g.vertex_count; ++v) order[static_cast<size_t>(v)] = v;
  if (g.vertex_count > 0) {
    const std::vector<double> from_root = distances_from(g, 0);
    std::stable_sort(order.begin(), order.end(), [&from_root](VertexId a, VertexId b) {
      const double da = from_root[static_cast<size_t>(a)];
      const double db = from_root[static_cast<size_t>(b)];
      if (da != db) return da < db;
      return a < b;
    });
  }
  std::vector<char> covered(static_cast<size_t>(g.vertex_count), 0);
  std::vector<VertexId> centers;
  for (VertexId v : order) {
    if (covered[static_cast<size_t>(v)]) continue;
    const ShortestPathTree tree = shortest_path_tree(g, v, {}, radius);
    for (VertexId u = 0; u < g.vertex_count; ++u)
      if (tree.dist[static_cast<size_t>(u)] <= radius) covered[static_cast<size_t>(u)] = 1;
    centers.push_back(v);
  }
  return centers;
}

}  // namespace

DimensionEstimate estimate_doubling_dimension(const WeightedGraph& g, int k,
                                              const std::vector<double>& scales) {
  for (size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw std::invalid_argument("scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1]))
      throw std::invalid_argument("scales must be strictly decreasing");
  }

  DimensionEstimate est;
  est.subdivision = k;
  est.scales = scales;
  if (scales.empty()) return est;

  const WeightedGraph sub = subdivide(g, k);
  for (double r : scales) {
    est.cover_centers.push_back(greedy_ball_cover(sub, r));
    est.cover_sizes.push_back(static_cast<int>(est.cover_centers.back().size()));
  }

  // Pairwise growth: log(size ratio) / log(radius ratio); equals
  // log2(count(r/2)/count(r)) on a halving ladder.
  for (size_t i = 0; i + 1 < scales.size(); ++i) {
    const double growth =
        std::log(static_cast<double>(est.cover_sizes[i + 1]) / est.cover_sizes[i]) /
        std::log(scales[i] / scales[i + 1]);
    est.exponent = std::max(est.exponent, growth);
  }

  // Least-squares slope of log size against log(1/r).
  if (scales.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(scales.size());
    for (size_t i = 0; i < scales.size(); ++i) {
      const double x = std::log(1.0 / scales[i]);
      const double y = std::log(static_cast<double>(est.cover_sizes[i]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom != 0.0) est.slope = (n * sxy - sx * sy) / denom;
  }
  return est;
}

DimensionConvergence check_subdivision_convergence(const WeightedGraph& g, int k,
                                                   const std::vector<double>& scales) {
  DimensionConvergence conv;
  conv.at_k = estimate_doubling_dimension(g, k, scales);
  conv.at_2k = estimate_doubling_dimension(g, 2 * k, scales);
  conv.converged = std::abs(conv.at_k.exponent - conv.at_2k.exponent) < 0.5;
  return conv;
}

int count_large_edges(const WeightedGraph& g, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
  int count = 0;
  for (const Edge& e : g.edges)
    if (e.weight > r) ++count;
  return count;
}

std::vector<int> count_large_clusters(const WeightedGraph& normalized,
                                      const std::vector<std::vector<EdgeId>>& clusters,
                                      VertexId center, double R,
                                      const std::vector<double>& gamma_ladder) {
  if (!(R > 0.0)) throw std::invalid_argument("R must be > 0");
  const Ball b = ball(normalized, center, R);

  std::vector<double> size(clusters.size(), 0.0);
  std::vector<char> touches(clusters.size(), 0);
  for (size_t i = 0; i < clusters.size(); ++i) {
    for (EdgeId id : clusters[i]) {
      const Edge* e = normalized.find_edge(id);
      if (e == nullptr) throw InvalidEdgeError("cluster edge id " + std::to_string(id));
      size[i] += e->weight;
      if (b.contains(e->u) || b.contains(e->v)) touches[i] = 1;
    }
  }

  std::vector<int> counts;
  counts.reserve(gamma_ladder.size());
  for (double gamma : gamma_ladder) {
    int c = 0;
    for (size_t i = 0; i < clusters.size(); ++i)
      if (touches[i] && size[i] >= gamma) ++c;
    counts.push_back(c);
  }
  return counts;
}

}  // namespace tprobe
