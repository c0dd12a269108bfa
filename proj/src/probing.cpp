#include "tprobe/probing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tprobe {

void ProbingConfig::validate() const {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw InvalidConfigError("epsilon must be in (0,1)");
  if (!(c > 0.0)) throw InvalidConfigError("c must be > 0");
  if (path_mode) {
    if (!(c < 1.0 / 800.0)) throw InvalidConfigError("path mode requires c < 1/800");
    if (path_count_bound < 1) throw InvalidConfigError("path count bound U must be >= 1");
  } else {
    if (c > 1.0 / 16.0) throw InvalidConfigError("c must be <= 1/16");
  }
  if (!(log_base > 1.0)) throw InvalidConfigError("log base must be > 1");
}

double ProbingConfig::log_of(double x) const { return std::log(x) / std::log(log_base); }

std::vector<EdgeId> probe_set_for_threshold(const WeightedGraph& g, const Ball& b,
                                            double threshold) {
  if (threshold < 0.0) throw InvalidConfigError("threshold must be >= 0");
  std::vector<EdgeId> out;
  for (const Edge& e : g.edges)
    if (b.contains(e.u) && b.contains(e.v) && e.weight > threshold) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

ProbingResult run_independent(VertexId s, VertexId t, const IndependentModel& model,
                              const HiddenRealization& realization, const ProbingConfig& cfg,
                              std::uint64_t fresh_seed, bool path_mode) {
  cfg.validate();
  if (cfg.path_mode != path_mode)
    throw InvalidConfigError(path_mode ? "approximate_path requires cfg.path_mode"
                                       : "approximate_length requires cfg.path_mode == false");
  if (realization.kind() != HiddenRealization::Kind::kEdgeWeights)
    throw WrongModelError("independent probing needs an edge-weight realization");
  const WeightedGraph& g = *model.graph;

  ProbingResult result;
  result.fresh_seed = fresh_seed;
  result.log_base = cfg.log_base;
  if (s == t) {
    result.path = Path{{s}, {}, 0.0};
    result.ball_size = 1;
    return result;
  }

  const double base_dist = shortest_path(g, s, t).first;  // throws Unreachable

  const double n = static_cast<double>(g.vertex_count);
  const double log_term =
      path_mode ? cfg.log_of(n * static_cast<double>(cfg.path_count_bound)) : cfg.log_of(n);
  double threshold = cfg.c * cfg.epsilon * cfg.epsilon * base_dist /
                     (std::pow(model.rho, 4.0) * log_term);
  if (cfg.threshold_override) threshold = *cfg.threshold_override;
  result.threshold = threshold;

  const Ball reach = ball(g, s, model.rho * base_dist);
  result.ball_size = reach.size();
  const WeightedGraph sim = induced_subgraph(g, reach.members);

  const HiddenRealization fresh = sample_independent(model, fresh_seed);
  std::vector<double> sim_weights(fresh.values().begin(), fresh.values().end());
  result.probed = probe_set_for_threshold(g, reach, threshold);
  for (EdgeId e : result.probed) sim_weights[static_cast<size_t>(e)] = realization.probe_edge(e);
  result.probe_count = static_cast<int>(result.probed.size());

  auto [dist, path] = shortest_path(sim, sim_weights, s, t);
  result.estimate = dist;
  result.path = std::move(path);
  return result;
}

}  // namespace

ProbingResult approximate_length(VertexId s, VertexId t, const IndependentModel& model,
                                 const HiddenRealization& realization, const ProbingConfig& cfg,
                                 std::uint64_t fresh_seed) {
  return run_independent(s, t, model, realization, cfg, fresh_seed, false);
}

ProbingResult approximate_path(VertexId s, VertexId t, const IndependentModel& model,
                               const HiddenRealization& realization, const ProbingConfig& cfg,
                               std::uint64_t fresh_seed) {
  return run_independent(s, t, model, realization, cfg, fresh_seed, true);
}

WeightedGraph normalize_demands(const DemandModel& model) {
  const WeightedGraph& g = *model.graph;
  std::vector<Edge> edges = g.edges;
  for (Edge& e : edges) {
    double basic = 0.0;
    for (const auto& [i, l] : model.edge_deps[static_cast<size_t>(e.id)])
      basic += l * model.lambda[static_cast<size_t>(i)];
    if (!(basic > 0.0))
      throw ZeroBasicWeightError("edge " + std::to_string(e.id) +
                                 " has zero basic-demand weight");
    e.weight = e.weight * std::pow(basic, model.beta);
  }
  return WeightedGraph(g.vertex_count, std::move(edges), g.directed);
}

ProbingResult probing_demands(VertexId s, VertexId t, const DemandModel& model,
                              const HiddenRealization& realization, const ProbingConfig& cfg,
                              std::uint64_t fresh_seed) {
  cfg.validate();
  if (realization.kind() != HiddenRealization::Kind::kDemands)
    throw WrongModelError("demand probing needs a demand realization");

  ProbingResult result;
  result.fresh_seed = fresh_seed;
  result.log_base = cfg.log_base;
  if (s == t) {
    result.path = Path{{s}, {}, 0.0};
    result.ball_size = 1;
    return result;
  }

  const WeightedGraph normalized = normalize_demands(model);
  const double base_dist = shortest_path(normalized, s, t).first;

  const double n = static_cast<double>(normalized.vertex_count);
  const double rho_pow_beta = std::pow(model.rho, model.beta);
  double threshold = cfg.epsilon * cfg.epsilon * base_dist /
                     (16.0 * cfg.log_of(2.0 * n) * std::pow(model.rho, 3.0 * model.beta) *
                      static_cast<double>(std::max(model.ell, 1)));
  if (cfg.threshold_override) threshold = *cfg.threshold_override;
  result.threshold = threshold;

  const Ball reach = ball(normalized, s, rho_pow_beta * base_dist);
  result.ball_size = reach.size();
  const WeightedGraph sim = induced_subgraph(normalized, reach.members);

  // Cluster size restricted to the ball: Omega_i = sum of normalized weights
  // of the cluster's edges present in the simulation subgraph.
  std::vector<double> omega(model.lambda.size(), 0.0);
  for (const Edge& e : sim.edges)
    for (const auto& [i, l] : model.edge_deps[static_cast<size_t>(e.id)])
      omega[static_cast<size_t>(i)] += e.weight;

  std::vector<double> y_sim(model.lambda.size(), 0.0);
  for (size_t i = 0; i < y_sim.size(); ++i) {
    if (omega[i] > threshold) {
      y_sim[i] = realization.probe_demand(static_cast<int>(i));
      result.probed.push_back(static_cast<std::int32_t>(i));
    } else {
      Rng rng(derive_seed(fresh_seed, i));
      y_sim[i] = rng.next_in(model.lambda[i], model.rho * model.lambda[i]);
    }
  }
  result.probe_count = static_cast<int>(result.probed.size());

  std::vector<double> sim_weights(static_cast<size_t>(model.graph->edge_id_bound()), 0.0);
  for (const Edge& e : sim.edges)
    sim_weights[static_cast<size_t>(e.id)] = realized_edge_weight(model, y_sim, e.id);

  auto [dist, path] = shortest_path(sim, sim_weights, s, t);
  result.estimate = dist;
  result.path = std::move(path);
  return result;
}

}  // namespace tprobe
