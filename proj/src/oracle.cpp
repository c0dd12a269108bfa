#include "tprobe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <unordered_map>

namespace tprobe {

SparseCover build_sparse_cover(const WeightedGraph& g, double radius, double padding) {
  if (!(radius > 0.0)) throw InvalidConfigError("cover radius must be > 0");
  if (padding < 0.0) throw InvalidConfigError("cover padding must be >= 0");

  SparseCover cover;
  cover.radius = radius;
  cover.padding = padding;
  cover.containment.assign(static_cast<size_t>(g.vertex_count), -1);

  const double set_radius = 2.0 * radius + padding;
  std::vector<char> satisfied(static_cast<size_t>(g.vertex_count), 0);
  for (VertexId u = 0; u < g.vertex_count; ++u) {
    if (satisfied[static_cast<size_t>(u)]) continue;
    ShortestPathTree tree = shortest_path_tree(g, u, {}, set_radius);
    std::vector<VertexId> members;
    const std::int32_t set_index = static_cast<std::int32_t>(cover.sets.size());
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      const double d = tree.dist[static_cast<size_t>(v)];
      if (d <= set_radius) members.push_back(v);
      // B_v(padding) lies inside B_u(2r + padding) for v within 2r of u
      if (d <= 2.0 * radius && !satisfied[static_cast<size_t>(v)]) {
        satisfied[static_cast<size_t>(v)] = 1;
        cover.containment[static_cast<size_t>(v)] = set_index;
      }
    }
    cover.sets.push_back(std::move(members));
  }

  std::vector<int> overlap(static_cast<size_t>(g.vertex_count), 0);
  for (const auto& set : cover.sets)
    for (VertexId v : set) ++overlap[static_cast<size_t>(v)];
  cover.max_overlap = overlap.empty() ? 0 : *std::max_element(overlap.begin(), overlap.end());
  cover.set_edges.assign(cover.sets.size(), {});
  return cover;
}

double ExactSubOracle::distance(const WeightedGraph& g, std::span<const double> weights, VertexId s,
                                VertexId t) const {
  return shortest_path_tree(g, s, weights).dist[static_cast<size_t>(t)];
}

std::vector<double> ExactSubOracle::distances(const WeightedGraph& g,
                                              std::span<const double> weights, VertexId s) const {
  return shortest_path_tree(g, s, weights).dist;
}

namespace {

WeightedGraph prune_edges(const WeightedGraph& g, const std::vector<EdgeId>& removed) {
  std::vector<char> drop(static_cast<size_t>(g.edge_id_bound()), 0);
  for (EdgeId e : removed) drop[static_cast<size_t>(e)] = 1;
  std::vector<Edge> kept;
  kept.reserve(g.edges.size() - removed.size());
  for (const Edge& e : g.edges)
    if (!drop[static_cast<size_t>(e.id)]) kept.push_back(e);
  return WeightedGraph(g.vertex_count, std::move(kept), g.directed);
}

}  // namespace

OracleState preprocess(const WeightedGraph& g, const IndependentModel& model, double epsilon,
                       std::uint64_t seed) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InvalidConfigError("epsilon must be in (0,1)");

  OracleState state;
  state.graph = &g;
  state.rho = model.rho;
  state.epsilon = epsilon;
  state.fresh_seed = seed;
  const HiddenRealization fresh = sample_independent(model, seed);
  state.fresh_weights.assign(fresh.values().begin(), fresh.values().end());

  double w_min = 1.0, w_max = 1.0;
  if (!g.edges.empty()) {
    w_min = w_max = g.edges.front().weight;
    for (const Edge& e : g.edges) {
      w_min = std::min(w_min, e.weight);
      w_max = std::max(w_max, e.weight);
    }
  }
  state.level_min = static_cast<int>(std::ceil(std::log2(w_min)));
  state.level_max = static_cast<int>(std::ceil(std::log2(w_max)));

  const double log_n = std::log(static_cast<double>(std::max(g.vertex_count, 2)));
  for (int i = state.level_min; i <= state.level_max; ++i) {
    OracleLevel level;
    level.level = i;
    level.threshold = state.c * epsilon * epsilon * std::exp2(static_cast<double>(i)) /
                      (std::pow(state.rho, 4.0) * log_n);
    for (const Edge& e : g.edges)
      if (e.weight > level.threshold) level.heavy_edges.push_back(e.id);
    std::sort(level.heavy_edges.begin(), level.heavy_edges.end());
    level.pruned = prune_edges(g, level.heavy_edges);

    const double scale = std::exp2(static_cast<double>(i));
    level.cover = build_sparse_cover(g, state.rho * scale, kQueryPad * state.rho * scale);

    std::vector<char> heavy(static_cast<size_t>(g.edge_id_bound()), 0);
    for (EdgeId e : level.heavy_edges) heavy[static_cast<size_t>(e)] = 1;
    for (size_t si = 0; si < level.cover.sets.size(); ++si) {
      std::vector<char> in_set(static_cast<size_t>(g.vertex_count), 0);
      for (VertexId v : level.cover.sets[si]) in_set[static_cast<size_t>(v)] = 1;
      for (const Edge& e : g.edges)
        if (heavy[static_cast<size_t>(e.id)] && in_set[static_cast<size_t>(e.u)] &&
            in_set[static_cast<size_t>(e.v)])
          level.cover.set_edges[si].push_back(e.id);
      std::sort(level.cover.set_edges[si].begin(), level.cover.set_edges[si].end());
    }
    state.levels.push_back(std::move(level));
  }
  return state;
}

double query(const OracleState& state, VertexId s, VertexId t,
             const HiddenRealization& realization, const SubOracle& sub, QueryInfo* info) {
  const WeightedGraph& g = *state.graph;
  const std::vector<double> base_weights = g.weights_by_id();

  const double base_dist = sub.distance(g, base_weights, s, t);
  if (base_dist == kInfiniteDistance)
    throw UnreachableError("no path from " + std::to_string(s) + " to " + std::to_string(t));
  if (s == t) {
    if (info) *info = QueryInfo{0.0, state.level_min, false, -1, 0, 0};
    return 0.0;
  }

  int i = static_cast<int>(std::ceil(std::log2(base_dist)));
  const bool clamped = i < state.level_min || i > state.level_max;
  i = std::clamp(i, state.level_min, state.level_max);
  const OracleLevel& level = state.level_for(i);

  const std::int32_t set_index = level.cover.containment[static_cast<size_t>(s)];
  if (set_index < 0) throw NoCoverSetError("no cover set for vertex " + std::to_string(s));
  const std::vector<EdgeId>& probed_edges = level.cover.set_edges[static_cast<size_t>(set_index)];

  // X = {s, t} plus endpoints of the probed set, compacted to overlay ids.
  std::vector<VertexId> overlay_vertices;
  std::unordered_map<VertexId, VertexId> overlay_id;
  auto add_vertex = [&](VertexId v) {
    if (overlay_id.emplace(v, static_cast<VertexId>(overlay_vertices.size())).second)
      overlay_vertices.push_back(v);
  };
  add_vertex(s);
  add_vertex(t);
  for (EdgeId e : probed_edges) {
    const Edge* edge = g.find_edge(e);
    add_vertex(edge->u);
    add_vertex(edge->v);
  }

  // Arc weights: no-traffic distances in the pruned resampled graph, then
  // probed values overlaid with min().
  const int k = static_cast<int>(overlay_vertices.size());
  std::vector<std::vector<double>> arc(static_cast<size_t>(k),
                                       std::vector<double>(static_cast<size_t>(k), kInfiniteDistance));
  for (int a = 0; a < k; ++a) {
    const std::vector<double> dist =
        sub.distances(level.pruned, state.fresh_weights, overlay_vertices[static_cast<size_t>(a)]);
    for (int b = 0; b < k; ++b)
      arc[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          dist[static_cast<size_t>(overlay_vertices[static_cast<size_t>(b)])];
  }
  for (EdgeId e : probed_edges) {
    const Edge* edge = g.find_edge(e);
    const double w = realization.probe_edge(e);
    const VertexId a = overlay_id[edge->u];
    const VertexId b = overlay_id[edge->v];
    arc[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        std::min(arc[static_cast<size_t>(a)][static_cast<size_t>(b)], w);
    if (!g.directed)
      arc[static_cast<size_t>(b)][static_cast<size_t>(a)] =
          std::min(arc[static_cast<size_t>(b)][static_cast<size_t>(a)], w);
  }

  std::vector<Edge> overlay_edges;
  EdgeId next_id = 0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b && arc[static_cast<size_t>(a)][static_cast<size_t>(b)] < kInfiniteDistance)
        overlay_edges.push_back({next_id++, static_cast<VertexId>(a), static_cast<VertexId>(b),
                                 arc[static_cast<size_t>(a)][static_cast<size_t>(b)]});
  const WeightedGraph overlay(k, std::move(overlay_edges), /*directed=*/true);

  const double result =
      shortest_path_tree(overlay, overlay_id[s]).dist[static_cast<size_t>(overlay_id[t])];
  if (result == kInfiniteDistance)
    throw UnreachableError("overlay graph disconnected between query endpoints");

  if (info)
    *info = QueryInfo{base_dist, i,  clamped, set_index, k,
                      static_cast<int>(probed_edges.size())};
  return result;
}

double query(const OracleState& state, VertexId s, VertexId t,
             const HiddenRealization& realization, QueryInfo* info) {
  static const ExactSubOracle exact;
  return query(state, s, t, realization, exact, info);
}

namespace {

constexpr char kMagic[4] = {'T', 'P', 'D', 'O'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& value) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
}

template <typename T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  write_pod(out, static_cast<std::uint64_t>(v.size()));
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
void read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  read_pod(in, n);
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

}  // namespace

void save_oracle(const OracleState& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::uint32_t>(state.graph->vertex_count));
  write_pod(out, static_cast<std::uint32_t>(state.graph->edge_count()));
  write_pod(out, state.fresh_seed);
  write_pod(out, state.rho);
  write_pod(out, state.epsilon);
  write_pod(out, state.c);
  write_pod(out, static_cast<std::int32_t>(state.level_min));
  write_pod(out, static_cast<std::int32_t>(state.level_max));
  write_vec(out, state.fresh_weights);
  for (const OracleLevel& level : state.levels) {
    write_pod(out, static_cast<std::int32_t>(level.level));
    write_pod(out, level.threshold);
    write_vec(out, level.heavy_edges);
    write_pod(out, level.cover.radius);
    write_pod(out, level.cover.padding);
    write_pod(out, static_cast<std::int32_t>(level.cover.max_overlap));
    write_pod(out, static_cast<std::uint64_t>(level.cover.sets.size()));
    for (size_t si = 0; si < level.cover.sets.size(); ++si) {
      write_vec(out, level.cover.sets[si]);
      write_vec(out, level.cover.set_edges[si]);
    }
    write_vec(out, level.cover.containment);
  }
  if (!out) throw Error("write failed: " + path);
}

OracleState load_oracle(const std::string& path, const WeightedGraph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  std::uint32_t version = 0;
  read_pod(in, version);
  if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kVersion)
    throw ParseError("not a compatible oracle cache file: " + path, 0);

  std::uint32_t n = 0, m = 0;
  read_pod(in, n);
  read_pod(in, m);
  if (n != static_cast<std::uint32_t>(g.vertex_count) ||
      m != static_cast<std::uint32_t>(g.edge_count()))
    throw ParseError("oracle cache was built for a different graph", 0);

  OracleState state;
  state.graph = &g;
  read_pod(in, state.fresh_seed);
  read_pod(in, state.rho);
  read_pod(in, state.epsilon);
  read_pod(in, state.c);
  std::int32_t lo = 0, hi = 0;
  read_pod(in, lo);
  read_pod(in, hi);
  state.level_min = lo;
  state.level_max = hi;
  read_vec(in, state.fresh_weights);
  for (int i = lo; i <= hi; ++i) {
    OracleLevel level;
    std::int32_t stored = 0;
    read_pod(in, stored);
    level.level = stored;
    read_pod(in, level.threshold);
    read_vec(in, level.heavy_edges);
    read_pod(in, level.cover.radius);
    read_pod(in, level.cover.padding);
    std::int32_t overlap = 0;
    read_pod(in, overlap);
    level.cover.max_overlap = overlap;
    std::uint64_t set_count = 0;
    read_pod(in, set_count);
    level.cover.sets.resize(set_count);
    level.cover.set_edges.resize(set_count);
    for (std::uint64_t si = 0; si < set_count; ++si) {
      read_vec(in, level.cover.sets[si]);
      read_vec(in, level.cover.set_edges[si]);
    }
    read_vec(in, level.cover.containment);
    level.pruned = prune_edges(g, level.heavy_edges);
    state.levels.push_back(std::move(level));
  }
  if (!in) throw ParseError("truncated oracle cache file: " + path, 0);
  return state;
}

}  // namespace tprobe
