// Empirical instrumentation for the structural quantities the guarantees
// depend on: doubling-dimension estimates on the subdivided graph, heavy-edge
// counts, and large-cluster intersection counts.
#pragma once

#include <vector>

#include "tprobe/graph.hpp"

namespace tprobe {

// Each edge becomes a path of k segments of weight w/k. Vertex distances are
// unchanged; the new interior vertices expose edge midpoints to ball covers.
WeightedGraph subdivide(const WeightedGraph& g, int k);

// Greedy ball-cover estimate of the doubling exponent: at each scale the
// subdivided graph is covered by carving balls at uncovered vertices, swept
// in distance-from-root order. The estimate is an upper-bound-flavored
// proxy, not the exact dimension.
struct DimensionEstimate {
  int subdivision = 1;                            // k
  std::vector<double> scales;                     // decreasing radius ladder
  std::vector<int> cover_sizes;                   // greedy cover size per scale
  std::vector<std::vector<VertexId>> cover_centers;  // chosen centers, per scale
  double exponent = 0.0;  // max pairwise growth rate between scales
  double slope = 0.0;     // least-squares slope of log size vs log(1/r)
};

DimensionEstimate estimate_doubling_dimension(const WeightedGraph& g, int k,
                                              const std::vector<double>& scales);

// The finite-k estimate is reported as converged when doubling k moves the
// exponent by less than 0.5.
struct DimensionConvergence {
  DimensionEstimate at_k;
  DimensionEstimate at_2k;
  bool converged = false;
};

DimensionConvergence check_subdivision_convergence(const WeightedGraph& g, int k,
                                                   const std::vector<double>& scales);

// |{e : w_e > r}|
int count_large_edges(const WeightedGraph& g, double r);

// For each gamma in the ladder: how many clusters with normalized size
// sum_{e in C} w_e >= gamma touch the ball of radius R around the center (a
// cluster touches the ball when some member edge has an endpoint inside).
std::vector<int> count_large_clusters(const WeightedGraph& normalized,
                                      const std::vector<std::vector<EdgeId>>& clusters,
                                      VertexId center, double R,
                                      const std::vector<double>& gamma_ladder);

}  // namespace tprobe
