#include "tprobe/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tprobe {

double EdgeDistribution::sample(Rng& rng, double rho) const {
  switch (family) {
    case DistFamily::kUniform:
      return rng.next_in(1.0, rho);
    case DistFamily::kTwoPoint:
      return rng.next_double() < 0.5 ? 1.0 : rho;
    case DistFamily::kTable: {
      const double u = rng.next_double();
      double acc = 0.0;
      for (size_t i = 0; i < multipliers.size(); ++i) {
        acc += probs[i];
        if (u < acc) return multipliers[i];
      }
      return multipliers.back();
    }
  }
  return 1.0;
}

static void check_rho(double rho) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::invalid_argument("rho must be >= 1");
}

IndependentModel IndependentModel::uniform(const WeightedGraph& g, double rho) {
  check_rho(rho);
  IndependentModel m;
  m.graph = &g;
  m.rho = rho;
  m.dists.assign(static_cast<size_t>(g.edge_id_bound()), EdgeDistribution{});
  return m;
}

IndependentModel IndependentModel::two_point(const WeightedGraph& g, double rho) {
  IndependentModel m = uniform(g, rho);
  for (auto& d : m.dists) d.family = DistFamily::kTwoPoint;
  return m;
}

IndependentModel IndependentModel::table(const WeightedGraph& g, double rho, EdgeDistribution shared) {
  check_rho(rho);
  shared.family = DistFamily::kTable;
  IndependentModel m;
  m.graph = &g;
  m.rho = rho;
  m.dists.assign(static_cast<size_t>(g.edge_id_bound()), shared);
  m.validate();
  return m;
}

void IndependentModel::validate() const {
  if (graph == nullptr) throw std::invalid_argument("model has no graph");
  check_rho(rho);
  for (const auto& d : dists) {
    if (d.family != DistFamily::kTable) continue;
    if (d.multipliers.empty() || d.multipliers.size() != d.probs.size())
      throw std::invalid_argument("table distribution needs matching multipliers/probs");
    double total = 0.0;
    for (size_t i = 0; i < d.multipliers.size(); ++i) {
      if (d.multipliers[i] < 1.0 || d.multipliers[i] > rho)
        throw std::invalid_argument("table multiplier outside [1, rho]");
      if (d.probs[i] < 0.0) throw std::invalid_argument("negative table probability");
      total += d.probs[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("table probabilities must sum to 1");
  }
}

DemandModel::DemandModel(const WeightedGraph& g, double rho_in, double beta_in,
                         std::vector<double> lambdas, const std::vector<DemandTriple>& deps)
    : graph(&g), rho(rho_in), beta(beta_in), lambda(std::move(lambdas)) {
  check_rho(rho);
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  for (double l : lambda)
    if (!(l > 0.0)) throw std::invalid_argument("lambda_i must be > 0");

  cluster_edges.assign(lambda.size(), {});
  edge_deps.assign(static_cast<size_t>(g.edge_id_bound()), {});
  for (const DemandTriple& t : deps) {
    if (t.demand < 0 || t.demand >= demand_count())
      throw std::invalid_argument("dependence triple demand index out of range");
    if (g.find_edge(t.edge) == nullptr)
      throw std::invalid_argument("dependence triple edge id " + std::to_string(t.edge) +
                                  " not in graph");
    if (t.lambda < 0.0) throw std::invalid_argument("lambda_i^e must be >= 0");
    if (t.lambda == 0.0) continue;  // zero entries carry no dependence
    cluster_edges[static_cast<size_t>(t.demand)].push_back({t.edge, t.lambda});
    edge_deps[static_cast<size_t>(t.edge)].push_back({t.demand, t.lambda});
  }
  for (auto& ce : cluster_edges) std::sort(ce.begin(), ce.end());
  for (auto& ed : edge_deps) {
    std::sort(ed.begin(), ed.end());
    ell = std::max(ell, static_cast<int>(ed.size()));
  }
}

std::vector<EdgeId> DemandModel::cluster(int i) const {
  std::vector<EdgeId> ids;
  ids.reserve(cluster_edges[static_cast<size_t>(i)].size());
  for (const auto& [e, l] : cluster_edges[static_cast<size_t>(i)]) ids.push_back(e);
  return ids;
}

HiddenRealization HiddenRealization::from_edge_weights(std::vector<double> weights,
                                                       std::uint64_t seed) {
  return HiddenRealization(Kind::kEdgeWeights, std::move(weights), seed);
}

HiddenRealization HiddenRealization::from_demands(std::vector<double> y, std::uint64_t seed) {
  return HiddenRealization(Kind::kDemands, std::move(y), seed);
}

HiddenRealization::HiddenRealization(HiddenRealization&& other) noexcept
    : kind_(other.kind_), values_(std::move(other.values_)), seed_(other.seed_) {
  std::lock_guard<std::mutex> lock(other.mu_);
  probe_order_ = std::move(other.probe_order_);
  probed_ = std::move(other.probed_);
}

double HiddenRealization::probe(std::int32_t index) const {
  if (index < 0 || static_cast<size_t>(index) >= values_.size())
    throw InvalidEdgeError("probe index " + std::to_string(index) + " out of range");
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (probed_.insert(index).second) probe_order_.push_back(index);
  }
  return values_[static_cast<size_t>(index)];
}

double HiddenRealization::probe_edge(EdgeId e) const {
  if (kind_ != Kind::kEdgeWeights)
    throw WrongModelError("probe_edge on a demand realization");
  return probe(e);
}

double HiddenRealization::probe_demand(int i) const {
  if (kind_ != Kind::kDemands)
    throw WrongModelError("probe_demand on an edge-weight realization");
  return probe(i);
}

int HiddenRealization::probe_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(probed_.size());
}

std::vector<std::int32_t> HiddenRealization::probe_log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return probe_order_;
}

HiddenRealization sample_independent(const IndependentModel& model, std::uint64_t seed) {
  const WeightedGraph& g = *model.graph;
  std::vector<double> w(static_cast<size_t>(g.edge_id_bound()), 0.0);
  for (const Edge& e : g.edges) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(e.id)));
    const double mult = model.dists[static_cast<size_t>(e.id)].sample(rng, model.rho);
    w[static_cast<size_t>(e.id)] = e.weight * mult;
  }
  return HiddenRealization::from_edge_weights(std::move(w), seed);
}

HiddenRealization sample_demands(const DemandModel& model, std::uint64_t seed) {
  std::vector<double> y(model.lambda.size(), 0.0);
  for (size_t i = 0; i < y.size(); ++i) {
    Rng rng(derive_seed(seed, i));
    y[i] = rng.next_in(model.lambda[i], model.rho * model.lambda[i]);
  }
  return HiddenRealization::from_demands(std::move(y), seed);
}

double realized_edge_weight(const DemandModel& model, std::span<const double> y, EdgeId e) {
  const Edge* edge = model.graph->find_edge(e);
  if (edge == nullptr) throw InvalidEdgeError("edge id " + std::to_string(e) + " not in graph");
  double load = 0.0;
  for (const auto& [i, l] : model.edge_deps[static_cast<size_t>(e)])
    load += l * y[static_cast<size_t>(i)];
  return std::pow(load, model.beta) * edge->weight;
}

std::vector<double> realized_weights(const DemandModel& model, std::span<const double> y) {
  std::vector<double> w(static_cast<size_t>(model.graph->edge_id_bound()), 0.0);
  for (const Edge& e : model.graph->edges)
    w[static_cast<size_t>(e.id)] = realized_edge_weight(model, y, e.id);
  return w;
}

}  // namespace tprobe
