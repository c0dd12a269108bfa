// Chain-of-parallel-edges lower-bound instance and the adaptive probing
// strategy harness: path recovery needs many probes even though length
// estimation does not.
//
// The instance has vertices v_0..v_{n-1}; every consecutive pair is joined by
// two parallel unit-weight edges whose realized weights are independent
// uniform draws from [1,2]. Any s-t path uses exactly one edge per gap, so
// d_{G'}(s,t) = sum_i min(u_i, l_i).
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tprobe/graph.hpp"
#include "tprobe/models.hpp"

namespace tprobe {

struct ChainInstance {
  int n = 0;  // vertex count; n-1 gaps, 2(n-1) edges
  std::shared_ptr<const WeightedGraph> base;
  IndependentModel model;  // uniform, rho = 2
  HiddenRealization realization;

  // Gap i is spanned by edge ids 2i (upper) and 2i+1 (lower).
  static EdgeId upper_edge(int gap) { return 2 * gap; }
  static EdgeId lower_edge(int gap) { return 2 * gap + 1; }
};

ChainInstance generate_chain(int n, std::uint64_t seed);

// One strategy step: either ask for an edge's realized weight or commit to a
// path.
struct ProbeRequest {
  EdgeId edge = 0;
};
struct PathOutput {
  Path path;
};
using StrategyAction = std::variant<ProbeRequest, PathOutput>;

// What a strategy is allowed to see: the unweighted structure plus the
// transcript of its own probes. The runner is the only realization accessor.
struct StrategyContext {
  const WeightedGraph& base;
  VertexId s = 0;
  VertexId t = 0;
  std::span<const std::pair<EdgeId, double>> transcript;
};

// step must be a pure function of the context so one strategy object can be
// reused across trials.
struct AdaptiveStrategy {
  std::string name;
  int budget = 0;  // max distinct probed edges
  std::function<StrategyAction(const StrategyContext&)> step;
};

struct StrategyRun {
  Path path;
  double quality = 0.0;  // realized path length / realized optimum
  int probes_used = 0;
};

// Drives the strategy against the hidden realization, enforcing the probe
// budget (BudgetExceededError) and path validity (InvalidPathError).
StrategyRun run_strategy(const AdaptiveStrategy& strategy, const WeightedGraph& base,
                         const HiddenRealization& realization);

struct QualitySummary {
  int trials = 0;
  double mean_quality = 0.0;
  double mean_distance = 0.0;  // mean realized optimum d_{G'}(s,t)
  double mean_probes = 0.0;
  std::vector<double> qualities;  // sorted ascending

  double percentile(double p) const;  // nearest-rank
};

// Seeded Monte Carlo over fresh chain instances of size n.
QualitySummary estimate_quality_distribution(const AdaptiveStrategy& strategy, int n, int trials,
                                             std::uint64_t seed);

// Probe budget as a fraction of the vertex count; 1/100 matches the regime
// where path recovery is provably poor.
inline int fractional_budget(int n, double budget_fraction = 0.01) {
  return static_cast<int>(static_cast<double>(n) * budget_fraction);
}

// Reference strategies.
AdaptiveStrategy omniscient_strategy(int edge_count);  // probes everything, returns the optimum
AdaptiveStrategy fixed_row_strategy();                 // zero budget, always the upper edges
AdaptiveStrategy prefix_greedy_strategy(int budget);   // probes leading gaps, greedy elsewhere

}  // namespace tprobe
