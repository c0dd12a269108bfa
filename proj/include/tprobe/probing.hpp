// Probing algorithms: estimate the s-t distance of the hidden graph by
// probing only heavy entities.
//
// Independent model: compute L = d_G(s,t), resample every edge, keep the
// resample on light edges and probe the truth on edges with base weight
// above c*eps^2*L/(rho^4*log n), all inside the ball B_s(rho*L); the
// shortest path of that simulation approximates d_{G'}(s,t).
//
// Demand model: same idea after normalizing weights to the basic demands;
// a demand is probed when its cluster's normalized size inside the ball
// exceeds eps^2*L/(16*log(2n)*rho^(3*beta)*ell).
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tprobe/graph.hpp"
#include "tprobe/models.hpp"

namespace tprobe {

struct ProbingConfig {
  double epsilon = 0.25;           // target relative error, in (0,1)
  double c = 1.0 / 16.0;           // threshold constant; <= 1/16, and < 1/800 in path mode
  double log_base = 2.718281828459045;  // natural log by default
  bool path_mode = false;          // use log(n*U) in the threshold
  std::uint64_t path_count_bound = 1;   // U, only meaningful in path mode
  std::optional<double> threshold_override;  // fixed threshold instead of the formula

  void validate() const;
  double log_of(double x) const;   // log base `log_base`
};

struct ProbingResult {
  double estimate = 0.0;
  std::optional<Path> path;
  std::vector<std::int32_t> probed;  // edge ids or demand indices, sorted
  int probe_count = 0;
  int ball_size = 0;
  double threshold = 0.0;
  std::uint64_t fresh_seed = 0;  // seed of the resampled copy, distinct from the realization's
  double log_base = 0.0;
};

// Estimates d_{G'}(s,t) in the independent model. `fresh_seed` drives the
// resampled copy and must be independent of the realization's seed.
// Also returns the witnessing path of the simulation graph (vertex and edge
// ids are in the base graph's id space).
ProbingResult approximate_length(VertexId s, VertexId t, const IndependentModel& model,
                                 const HiddenRealization& realization, const ProbingConfig& cfg,
                                 std::uint64_t fresh_seed);

// Path-returning variant: threshold uses log(n*U) so the recommended path is
// near-optimal whenever few distinct shortest paths are possible. Requires
// cfg.path_mode and cfg.c < 1/800.
ProbingResult approximate_path(VertexId s, VertexId t, const IndependentModel& model,
                               const HiddenRealization& realization, const ProbingConfig& cfg,
                               std::uint64_t fresh_seed);

// Edge weights under basic demands: w~_e = w_e * (sum_i lambda_i^e*lambda_i)^beta.
// Throws ZeroBasicWeightError when some edge has zero basic load.
WeightedGraph normalize_demands(const DemandModel& model);

// Estimates d_{G'}(s,t) in the demand model by probing heavy clusters.
ProbingResult probing_demands(VertexId s, VertexId t, const DemandModel& model,
                              const HiddenRealization& realization, const ProbingConfig& cfg,
                              std::uint64_t fresh_seed);

// The ball-interior edges with base weight strictly above the threshold —
// exactly the set approximate_length probes.
std::vector<EdgeId> probe_set_for_threshold(const WeightedGraph& g, const Ball& b,
                                            double threshold);

}  // namespace tprobe
