// Preprocess/query data structure for repeated traffic-distance queries.
//
// Preprocessing fixes one resampled copy of the graph and, for every weight
// level 2^i, the set E_i of edges heavy at that level, the pruned copy with
// E_i removed, and a sparse cover of the vertex set. A query locates a cover
// set around s, probes only that set's heavy edges, and runs Dijkstra on a
// small overlay graph whose other arcs are no-traffic distances from a
// sub-oracle. The sub-oracle is abstracted; the default is exact Dijkstra.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tprobe/graph.hpp"
#include "tprobe/models.hpp"
#include "tprobe/probing.hpp"

namespace tprobe {

// Radius multiplier for the ball a query's cover set must contain.
inline constexpr double kQueryPad = 100.0;

// Family of vertex sets such that every ball of the padding radius is fully
// contained in at least one set. Overlap is measured, not bounded.
struct SparseCover {
  double radius = 0.0;   // level radius the cover was built for
  double padding = 0.0;  // radius of the balls guaranteed to be contained
  std::vector<std::vector<VertexId>> sets;
  std::vector<std::vector<EdgeId>> set_edges;  // E_S, filled by preprocess
  std::vector<std::int32_t> containment;       // per vertex: index of a containing set
  int max_overlap = 0;
};

// Iterated ball carving: repeatedly take the smallest uncovered vertex u and
// add the set B(u, 2*radius + padding); this set contains B_v(padding) for
// every v within 2*radius of u.
SparseCover build_sparse_cover(const WeightedGraph& g, double radius, double padding);

struct OracleLevel {
  int level = 0;          // i, for scale 2^i
  double threshold = 0.0; // c*eps^2*2^i/(rho^4*log n)
  std::vector<EdgeId> heavy_edges;  // E_i, sorted
  WeightedGraph pruned;             // base graph minus E_i (rebuilt on load)
  SparseCover cover;
};

// Answers distances under a fixed weight assignment. Query time is the K2 of
// the runtime analysis; only exactness (delta = 0) is shipped here.
class SubOracle {
 public:
  virtual ~SubOracle() = default;
  virtual double distance(const WeightedGraph& g, std::span<const double> weights, VertexId s,
                          VertexId t) const = 0;
  virtual std::vector<double> distances(const WeightedGraph& g, std::span<const double> weights,
                                        VertexId s) const = 0;
};

class ExactSubOracle final : public SubOracle {
 public:
  double distance(const WeightedGraph& g, std::span<const double> weights, VertexId s,
                  VertexId t) const override;
  std::vector<double> distances(const WeightedGraph& g, std::span<const double> weights,
                                VertexId s) const override;
};

struct OracleState {
  const WeightedGraph* graph = nullptr;
  double rho = 1.0;
  double epsilon = 0.25;
  double c = 1.0 / 16.0;
  std::uint64_t fresh_seed = 0;
  std::vector<double> fresh_weights;  // the resampled copy, by edge id
  int level_min = 0;
  int level_max = 0;
  std::vector<OracleLevel> levels;

  const OracleLevel& level_for(int i) const { return levels[static_cast<size_t>(i - level_min)]; }
};

OracleState preprocess(const WeightedGraph& g, const IndependentModel& model, double epsilon,
                       std::uint64_t seed);

struct QueryInfo {
  double base_dist = 0.0;  // sub-oracle no-traffic distance
  int level = 0;
  bool level_clamped = false;
  int set_index = -1;
  int overlay_vertices = 0;  // |X|
  int probed_edges = 0;      // |E_S|
};

// Traffic-distance query. Reads the hidden graph only through probe_edge on
// the edges of the selected cover set.
double query(const OracleState& state, VertexId s, VertexId t,
             const HiddenRealization& realization, const SubOracle& sub, QueryInfo* info = nullptr);
double query(const OracleState& state, VertexId s, VertexId t,
             const HiddenRealization& realization, QueryInfo* info = nullptr);

// Binary cache: versioned header, level table, cover sets, E_S lists. The
// base graph is not stored; load re-attaches the state to it and rebuilds
// the pruned per-level graphs.
void save_oracle(const OracleState& state, const std::string& path);
OracleState load_oracle(const std::string& path, const WeightedGraph& g);

}  // namespace tprobe
