// Stochastic weight models and the probe-counting hidden realization.
//
// Two models: IndependentModel draws each edge weight from its own bounded
// distribution on [w_e, rho*w_e]; DemandModel drives edge weights through m
// hidden demand variables y_i in [lambda_i, rho*lambda_i] via
//   w'_e(y) = (sum_i lambda_i^e * y_i)^beta * w_e.
// A HiddenRealization stores the truth and counts distinct probed entities.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_set>
#include <vector>

#include "tprobe/graph.hpp"
#include "tprobe/rng.hpp"

namespace tprobe {

enum class DistFamily { kUniform, kTwoPoint, kTable };

// Distribution of the multiplier w'_e / w_e on [1, rho].
//   kUniform: uniform on [1, rho]
//   kTwoPoint: 1 or rho with probability 1/2 each
//   kTable: discrete (multipliers[i], probs[i]); multipliers within [1, rho]
struct EdgeDistribution {
  DistFamily family = DistFamily::kUniform;
  std::vector<double> multipliers;
  std::vector<double> probs;

  double sample(Rng& rng, double rho) const;
};

struct IndependentModel {
  const WeightedGraph* graph = nullptr;
  double rho = 1.0;
  std::vector<EdgeDistribution> dists;  // indexed by edge id

  static IndependentModel uniform(const WeightedGraph& g, double rho);
  static IndependentModel two_point(const WeightedGraph& g, double rho);
  static IndependentModel table(const WeightedGraph& g, double rho, EdgeDistribution shared);

  void validate() const;
};

struct DemandTriple {
  int demand = 0;
  EdgeId edge = 0;
  double lambda = 0.0;  // lambda_i^e > 0
};

struct DemandModel {
  const WeightedGraph* graph = nullptr;
  double rho = 1.0;
  double beta = 4.0;
  std::vector<double> lambda;  // lambda_i, one per demand

  // Derived at construction from the sparse dependence triples.
  std::vector<std::vector<std::pair<EdgeId, double>>> cluster_edges;  // per demand
  std::vector<std::vector<std::pair<int, double>>> edge_deps;         // per edge id
  int ell = 0;  // max number of clusters containing any single edge

  DemandModel() = default;
  DemandModel(const WeightedGraph& g, double rho, double beta, std::vector<double> lambdas,
              const std::vector<DemandTriple>& deps);

  int demand_count() const { return static_cast<int>(lambda.size()); }

  // Edge ids of cluster C_i = {e : lambda_i^e > 0}.
  std::vector<EdgeId> cluster(int i) const;
};

// The actual (hidden) draw. Values are immutable; the probe log is
// internally synchronized so concurrent queries may share one realization.
// Re-probing an entity returns the same value and does not increment the
// count.
class HiddenRealization {
 public:
  enum class Kind { kEdgeWeights, kDemands };

  static HiddenRealization from_edge_weights(std::vector<double> weights, std::uint64_t seed = 0);
  static HiddenRealization from_demands(std::vector<double> y, std::uint64_t seed = 0);

  HiddenRealization(const HiddenRealization&) = delete;
  HiddenRealization& operator=(const HiddenRealization&) = delete;
  HiddenRealization(HiddenRealization&&) noexcept;

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> values() const { return values_; }

  double probe_edge(EdgeId e) const;    // WrongModelError on a demand realization
  double probe_demand(int i) const;     // WrongModelError on an edge realization

  int probe_count() const;
  std::vector<std::int32_t> probe_log() const;  // in first-probe order

 private:
  HiddenRealization(Kind kind, std::vector<double> values, std::uint64_t seed)
      : kind_(kind), values_(std::move(values)), seed_(seed) {}

  double probe(std::int32_t index) const;

  Kind kind_;
  std::vector<double> values_;
  std::uint64_t seed_ = 0;
  mutable std::mutex mu_;
  mutable std::vector<std::int32_t> probe_order_;
  mutable std::unordered_set<std::int32_t> probed_;
};

// Each edge weight drawn independently from its distribution; deterministic
// given seed and independent of iteration order.
HiddenRealization sample_independent(const IndependentModel& model, std::uint64_t seed);

// y_i drawn independently and uniformly from [lambda_i, rho*lambda_i].
HiddenRealization sample_demands(const DemandModel& model, std::uint64_t seed);

// Exact evaluation of (sum_i lambda_i^e * y_i)^beta * w_e.
double realized_edge_weight(const DemandModel& model, std::span<const double> y, EdgeId e);

// All realized weights, indexed by edge id.
std::vector<double> realized_weights(const DemandModel& model, std::span<const double> y);

}  // namespace tprobe
