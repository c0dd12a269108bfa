// Instance generators, file formats, and the threshold-scale sweep protocol.
//
// The sweep measures, per query and per threshold scale t_s, the realized
// quality of the path recommended after probing all clusters with normalized
// size above Gamma = L_hat*eps^2/(log n * t_s) against the exact realized
// optimum, alongside a no-probe baseline from an identically sampled copy.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tprobe/graph.hpp"
#include "tprobe/models.hpp"
#include "tprobe/probing.hpp"

namespace tprobe {

// 4-neighbour lattice with uniform weights; vertex (r,c) = r*cols + c.
WeightedGraph generate_grid(int rows, int cols, double weight);

// Grid whose designated rows are fast corridors: their horizontal edges get
// highway_weight and are grouped into consecutive clusters of cluster_len
// edges sharing one demand; every other edge gets a singleton demand. All
// lambda_i = 1 and every dependence coefficient is 1, so ell = 1.
struct HighwayGridInstance {
  std::shared_ptr<const WeightedGraph> graph;
  DemandModel model;
  int highway_cluster_count = 0;
};

HighwayGridInstance generate_highway_grid(int rows, int cols, double local_weight,
                                          const std::vector<int>& highway_rows,
                                          double highway_weight, int cluster_len, double rho = 2.0,
                                          double beta = 1.0);

// Every edge gets its own demand with lambda = 1; equivalent to independent
// uniform noise raised to beta.
DemandModel singleton_demand_model(const WeightedGraph& g, double rho, double beta);

// Text formats. Graph file:
//   graph v=<n> directed=<0|1>
//   <edge_id> <u> <v> <weight>
// Demand (cluster) file:
//   demands m=<m> beta=<beta>
//   <demand_id> <lambda_i> <rho>        one line per demand, id order
//   <demand_id> <edge_id> <lambda_i_e>  dependence triples
// Weights are written as shortest round-trip decimals, so save/load is
// bit-exact.
void save_graph(const WeightedGraph& g, const std::string& path);
WeightedGraph load_graph(const std::string& path);
void save_demands(const DemandModel& model, const std::string& path);
DemandModel load_demands(const std::string& path, const WeightedGraph& g);

std::string format_double(double value);  // shortest round-trip decimal

struct QueryPair {
  VertexId s = 0;
  VertexId t = 0;
  double base_dist = 0.0;
};

// Uniform vertex pairs rejection-sampled until Q pairs with base distance in
// [d_min, d_max]; throws NoValidPairsError after 1e6 rejections.
std::vector<QueryPair> sample_queries(const WeightedGraph& g, int count, double d_min, double d_max,
                                      std::uint64_t seed);

// L_hat = d_floor * 2^floor(log2(L / d_floor)): the largest power-of-two
// multiple of the minimum query distance that does not exceed L.
double level_distance(double L, double L_min);

// Gamma = L_hat * eps^2 / (ln n * t_s).
double experiment_threshold_formula(double L, double L_min, double epsilon, int n, double t_s);

struct ExperimentConfig {
  std::string generator = "highway-grid";  // grid | highway-grid | file
  int rows = 60;
  int cols = 60;
  double local_weight = 1.0;
  std::vector<int> highway_rows = {20, 40};
  double highway_weight = 0.25;
  int cluster_len = 10;
  std::string graph_file;
  std::string cluster_file;

  double rho = 2.0;
  double beta = 1.0;

  int query_count = 100;
  double d_min = 25.0;
  double d_max = 45.0;
  std::vector<double> threshold_scales = {1e-3, 0.01, 0.05, 0.12, 0.15, 0.2, 0.25, 0.5, 2.0, 30.0};
  double epsilon = 0.3;
  double percentile = 90.0;
  std::uint64_t master_seed = 1;
  std::string out_path = "sweep.csv";
  int workers = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Flat key=value text; '#' starts a comment. Lists are comma-separated.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct ExperimentRecord {
  int ts_index = 0;
  double ts = 0.0;
  int query_id = 0;
  VertexId s = 0;
  VertexId t = 0;
  double base_dist = 0.0;   // L, no-traffic distance under basic demands
  double level_dist = 0.0;  // L_hat
  double gamma = 0.0;
  int probe_count = 0;
  double probed_fraction = 0.0;
  double probed_ratio = 0.0;
  double noprobe_ratio = 0.0;
  double runtime_ms = 0.0;  // measured; excluded from the CSV to keep it reproducible
};

struct SweepSummary {
  double ts = 0.0;
  double max_probed_fraction = 0.0;
  double probed_ratio_percentile = 0.0;
  double noprobe_ratio_percentile = 0.0;
};

struct SweepResult {
  std::vector<ExperimentRecord> records;  // ordered by (ts_index, query_id)
  std::vector<SweepSummary> summaries;
  int total_clusters = 0;
};

// Deterministic given the config. Queries run on a worker pool; output order
// is independent of scheduling.
SweepResult run_sweep(const ExperimentConfig& cfg);

// CSV schemas are versioned via the leading comment line.
std::string records_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result, double percentile);

}  // namespace tprobe
