#include "tprobe/adversarial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tprobe/stats.hpp"

namespace tprobe {

ChainInstance generate_chain(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("chain needs at least 2 vertices");
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  edges.reserve(2 * static_cast<size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    edges.emplace_back(i, i + 1, 1.0);  // upper, id 2i
    edges.emplace_back(i, i + 1, 1.0);  // lower, id 2i+1
  }
  auto base = std::make_shared<WeightedGraph>(WeightedGraph::build(n, edges, false));
  IndependentModel model = IndependentModel::uniform(*base, 2.0);
  HiddenRealization realization = sample_independent(model, seed);
  return ChainInstance{n, std::move(base), std::move(model), std::move(realization)};
}

StrategyRun run_strategy(const AdaptiveStrategy& strategy, const WeightedGraph& base,
                         const HiddenRealization& realization) {
  if (strategy.budget < 0 || strategy.budget > base.edge_count())
    throw std::invalid_argument("strategy budget outside [0, edge count]");

  std::vector<std::pair<EdgeId, double>> transcript;
  std::map<EdgeId, double> seen;
  StrategyRun run;

  const long max_steps = 4L * (base.edge_count() + 2) + strategy.budget;
  for (long step = 0;; ++step) {
    if (step > max_steps) throw Error("strategy did not terminate");
    const StrategyContext ctx{base, 0, base.vertex_count - 1, transcript};
    const StrategyAction action = strategy.step(ctx);
    if (const auto* probe = std::get_if<ProbeRequest>(&action)) {
      auto it = seen.find(probe->edge);
      if (it != seen.end()) continue;  // already revealed, free
      if (run.probes_used >= strategy.budget)
        throw BudgetExceededError(strategy.name + " exceeded budget of " +
                                  std::to_string(strategy.budget));
      const double value = realization.probe_edge(probe->edge);
      seen.emplace(probe->edge, value);
      transcript.emplace_back(probe->edge, value);
      ++run.probes_used;
    } else {
      run.path = std::get<PathOutput>(action).path;
      break;
    }
  }

  if (!is_valid_path(base, run.path, 0, base.vertex_count - 1))
    throw InvalidPathError(strategy.name + " returned an invalid path");

  const std::span<const double> actual = realization.values();
  const double optimum = shortest_path(base, actual, 0, base.vertex_count - 1).first;
  run.quality = path_length(actual, run.path) / optimum;
  return run;
}

double QualitySummary::percentile(double p) const { return nearest_rank_percentile(qualities, p); }

QualitySummary estimate_quality_distribution(const AdaptiveStrategy& strategy, int n, int trials,
                                             std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  QualitySummary summary;
  summary.trials = trials;
  double q_total = 0.0, d_total = 0.0, p_total = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const ChainInstance chain = generate_chain(n, derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const StrategyRun run = run_strategy(strategy, *chain.base, chain.realization);
    summary.qualities.push_back(run.quality);
    q_total += run.quality;
    p_total += run.probes_used;
    d_total += shortest_path(*chain.base, chain.realization.values(), 0, n - 1).first;
  }
  std::sort(summary.qualities.begin(), summary.qualities.end());
  summary.mean_quality = q_total / trials;
  summary.mean_distance = d_total / trials;
  summary.mean_probes = p_total / trials;
  return summary;
}

namespace {

int gap_count(const WeightedGraph& base) { return base.vertex_count - 1; }

// Path choosing one edge per gap; pick[i] is the edge id used across gap i.
Path chain_path(const WeightedGraph& base, const std::vector<EdgeId>& pick) {
  Path p;
  p.vertices.push_back(0);
  for (int i = 0; i < gap_count(base); ++i) {
    p.vertices.push_back(i + 1);
    p.edges.push_back(pick[static_cast<size_t>(i)]);
    p.length += base.find_edge(pick[static_cast<size_t>(i)])->weight;
  }
  return p;
}

}  // namespace

AdaptiveStrategy omniscient_strategy(int edge_count) {
  AdaptiveStrategy s;
  s.name = "omniscient";
  s.budget = edge_count;
  s.step = [](const StrategyContext& ctx) -> StrategyAction {
    const int m = ctx.base.edge_count();
    if (static_cast<int>(ctx.transcript.size()) < m)
      return ProbeRequest{static_cast<EdgeId>(ctx.transcript.size())};
    std::vector<double> actual(static_cast<size_t>(m), 0.0);
    for (const auto& [e, w] : ctx.transcript) actual[static_cast<size_t>(e)] = w;
    std::vector<EdgeId> pick;
    for (int i = 0; i < gap_count(ctx.base); ++i) {
      const EdgeId up = ChainInstance::upper_edge(i);
      const EdgeId low = ChainInstance::lower_edge(i);
      pick.push_back(actual[static_cast<size_t>(up)] <= actual[static_cast<size_t>(low)] ? up : low);
    }
    return PathOutput{chain_path(ctx.base, pick)};
  };
  return s;
}

AdaptiveStrategy fixed_row_strategy() {
  AdaptiveStrategy s;
  s.name = "fixed-row";
  s.budget = 0;
  s.step = [](const StrategyContext& ctx) -> StrategyAction {
    std::vector<EdgeId> pick;
    for (int i = 0; i < gap_count(ctx.base); ++i) pick.push_back(ChainInstance::upper_edge(i));
    return PathOutput{chain_path(ctx.base, pick)};
  };
  return s;
}

AdaptiveStrategy prefix_greedy_strategy(int budget) {
  AdaptiveStrategy s;
  s.name = "prefix-greedy";
  s.budget = budget;
  s.step = [budget](const StrategyContext& ctx) -> StrategyAction {
    const int next = static_cast<int>(ctx.transcript.size());
    if (next < budget && next < ctx.base.edge_count())
      return ProbeRequest{static_cast<EdgeId>(next)};  // edges 2i, 2i+1 pair up leading gaps
    std::vector<double> known(static_cast<size_t>(ctx.base.edge_count()), -1.0);
    for (const auto& [e, w] : ctx.transcript) known[static_cast<size_t>(e)] = w;
    std::vector<EdgeId> pick;
    for (int i = 0; i < gap_count(ctx.base); ++i) {
      const EdgeId up = ChainInstance::upper_edge(i);
      const EdgeId low = ChainInstance::lower_edge(i);
      const double wu = known[static_cast<size_t>(up)];
      const double wl = known[static_cast<size_t>(low)];
      if (wu >= 0.0 && wl >= 0.0) {
        pick.push_back(wu <= wl ? up : low);
      } else if (wu >= 0.0) {
        // one side known: keep it only when it beats the other side's mean
        pick.push_back(wu <= 1.5 ? up : low);
      } else {
        pick.push_back(up);
      }
    }
    return PathOutput{chain_path(ctx.base, pick)};
  };
  return s;
}

}  // namespace tprobe
