// Acceptance suite: one pass/fail line per criterion. Exit code 0 only when
// every criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "support.hpp"
#include "tprobe/adversarial.hpp"
#include "tprobe/harness.hpp"
#include "tprobe/oracle.hpp"
#include "tprobe/probing.hpp"
#include "tprobe/stats.hpp"

using namespace tprobe;

namespace {

struct Criterion {
  bool ok = true;
  std::ostringstream detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Criteria 1 and 2 share the same 200 trials on the 40x40 grid.
struct GridTrialStats {
  int within_tolerance = 0;
  int trials = 0;
  bool probe_sets_exact = true;
  bool partial_when_threshold_high = true;
  double elapsed_s = 0.0;
};

GridTrialStats run_grid_trials() {
  const auto start = std::chrono::steady_clock::now();
  GridTrialStats stats;
  const WeightedGraph g = generate_grid(40, 40, 1.0);
  const auto model = IndependentModel::uniform(g, 2.0);
  ProbingConfig cfg;
  cfg.epsilon = 0.25;
  const auto queries = sample_queries(g, 200, 5.0, 20.0, 2024);
  stats.trials = static_cast<int>(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    const auto realization = sample_independent(model, derive_seed(10, i));
    const auto res = approximate_length(q.s, q.t, model, realization, cfg, derive_seed(20, i));
    const double exact = shortest_path(g, realization.values(), q.s, q.t).first;
    if (std::abs(res.estimate - exact) <= cfg.epsilon * exact) ++stats.within_tolerance;

    const Ball reach = ball(g, q.s, model.rho * q.base_dist);
    const auto expected = probe_set_for_threshold(g, reach, res.threshold);
    if (res.probed != expected) stats.probe_sets_exact = false;
    int ball_edges = 0;
    double min_ball_weight = kInfiniteDistance;
    for (const Edge& e : g.edges)
      if (reach.contains(e.u) && reach.contains(e.v)) {
        ++ball_edges;
        min_ball_weight = std::min(min_ball_weight, e.weight);
      }
    if (res.threshold > min_ball_weight && res.probe_count >= ball_edges)
      stats.partial_when_threshold_high = false;
  }
  stats.elapsed_s = seconds_since(start);
  return stats;
}

Criterion criterion1(const GridTrialStats& stats) {
  Criterion c;
  c.ok = stats.within_tolerance >= (stats.trials * 95) / 100 && stats.elapsed_s < 60.0;
  c.detail << stats.within_tolerance << "/" << stats.trials << " within eps*delta, "
           << stats.elapsed_s << " s";
  return c;
}

Criterion criterion2(const GridTrialStats& stats) {
  Criterion c;
  c.ok = stats.probe_sets_exact && stats.partial_when_threshold_high;
  c.detail << (stats.probe_sets_exact ? "probe sets exact" : "probe set mismatch")
           << "; high-threshold partial-probe clause "
           << (stats.partial_when_threshold_high ? "holds" : "violated")
           << " (vacuous on a unit grid)";
  return c;
}

Criterion criterion3() {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  const int n = 2000;
  const int trials = 500;

  double distance_total = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ChainInstance chain = generate_chain(n, derive_seed(30, static_cast<std::uint64_t>(t)));
    double d = 0.0;
    for (int i = 0; i + 1 < n; ++i)
      d += std::min(chain.realization.values()[static_cast<size_t>(2 * i)],
                    chain.realization.values()[static_cast<size_t>(2 * i + 1)]);
    distance_total += d;
  }
  const double mean_per_vertex = distance_total / trials / n;
  const bool a_ok = mean_per_vertex >= 4.0 / 3.0 - 0.02 && mean_per_vertex <= 4.0 / 3.0 + 0.02;

  const auto zero = estimate_quality_distribution(fixed_row_strategy(), n, trials, 31);
  const bool b_ok = std::abs(zero.mean_quality - 9.0 / 8.0) <= 0.01;

  const auto greedy = estimate_quality_distribution(prefix_greedy_strategy(fractional_budget(n)), n, trials, 32);
  int above = 0;
  for (double q : greedy.qualities)
    if (q > 9.0 / 8.0 - 0.1) ++above;
  const bool c_ok = above >= (trials * 95) / 100;

  const double elapsed = seconds_since(start);
  c.ok = a_ok && b_ok && c_ok && elapsed < 30.0;
  c.detail << "mean d/n = " << mean_per_vertex << ", zero-budget mean q = " << zero.mean_quality
           << ", greedy above bound " << above << "/" << trials << ", " << elapsed << " s";
  return c;
}

HighwayGridInstance criterion4_instance() {
  return generate_highway_grid(60, 60, 1.0, {20, 40}, 0.25, 10, 2.0, 1.0);
}

Criterion criterion4() {
  Criterion c;
  const auto inst = criterion4_instance();
  const WeightedGraph normalized = normalize_demands(inst.model);
  const auto queries = sample_queries(normalized, 100, 25.0, 45.0, 44);
  ProbingConfig cfg;
  cfg.epsilon = 0.3;
  int within = 0;
  for (size_t i = 0; i < queries.size(); ++i) {
    const auto realization = sample_demands(inst.model, derive_seed(40, i));
    const auto res = probing_demands(queries[i].s, queries[i].t, inst.model, realization, cfg,
                                     derive_seed(41, i));
    const auto actual = realized_weights(inst.model, realization.values());
    const double exact = shortest_path(*inst.graph, actual, queries[i].s, queries[i].t).first;
    if (std::abs(res.estimate - exact) <= cfg.epsilon * exact) ++within;
  }
  c.ok = within >= 90;
  c.detail << within << "/100 within eps*delta";
  return c;
}

Criterion criterion5() {
  Criterion c;
  ExperimentConfig cfg;
  cfg.generator = "highway-grid";
  cfg.rows = 60;
  cfg.cols = 60;
  cfg.highway_rows = {20, 40};
  cfg.highway_weight = 0.25;
  cfg.cluster_len = 10;
  cfg.rho = 2.0;
  cfg.beta = 1.0;
  cfg.query_count = 100;
  cfg.d_min = 25.0;
  cfg.d_max = 45.0;
  cfg.threshold_scales = {1e-3, 0.01, 0.05, 0.12, 0.15, 0.2, 0.25, 0.5, 2.0, 30.0};
  cfg.epsilon = 0.3;

  const size_t ts_count = cfg.threshold_scales.size();
  std::vector<std::vector<double>> pooled(ts_count);
  std::vector<double> max_fraction(ts_count, 0.0);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    cfg.master_seed = seed;
    const SweepResult result = run_sweep(cfg);
    const size_t per_ts = static_cast<size_t>(cfg.query_count);
    for (size_t j = 0; j < ts_count; ++j) {
      for (size_t q = 0; q < per_ts; ++q)
        pooled[j].push_back(result.records[j * per_ts + q].probed_ratio);
      max_fraction[j] = std::max(max_fraction[j], result.summaries[j].max_probed_fraction);
    }
  }

  struct Point {
    double fraction, ratio;
  };
  std::vector<Point> curve;
  for (size_t j = 0; j < ts_count; ++j)
    curve.push_back({max_fraction[j], nearest_rank_percentile(pooled[j], 90.0)});
  std::sort(curve.begin(), curve.end(), [](const Point& a, const Point& b) {
    return a.fraction < b.fraction;
  });

  int big_inversions = 0;
  for (size_t j = 0; j + 1 < curve.size(); ++j)
    if (curve[j + 1].ratio > curve[j].ratio + 0.005) ++big_inversions;
  const double zero_probe_end = curve.front().ratio;
  const double full_probe_end = curve.back().ratio;

  c.ok = big_inversions <= 1 && full_probe_end == 1.0 &&
         zero_probe_end >= full_probe_end + 0.01;
  c.detail << "inversions > 0.005: " << big_inversions << ", ends " << zero_probe_end << " -> "
           << full_probe_end;
  return c;
}

// Hand-picked multigraphs with <= 6 vertices and <= 8 edges; two-point
// weights make every realization enumerable.
std::vector<WeightedGraph> small_graph_suite() {
  std::vector<WeightedGraph> suite;
  suite.push_back(WeightedGraph(2, {{0, 0, 1, 1.0}, {1, 0, 1, 1.5}}, false));  // parallel pair
  suite.push_back(WeightedGraph::build(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 2.5}}));
  suite.push_back(WeightedGraph::build(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}, {0, 2, 1.4}}));
  suite.push_back(WeightedGraph(4, {{0, 0, 1, 1.0}, {1, 1, 1, 0.5}, {2, 1, 2, 1.0}, {3, 2, 3, 2.0}}, false));
  suite.push_back(WeightedGraph::build(5, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 4, 0.5}, {0, 3, 0.7}, {3, 4, 0.7}, {1, 3, 0.2}}));
  suite.push_back(WeightedGraph::build(
      6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 5, 1.0}, {0, 3, 1.1}, {3, 4, 1.1}, {4, 5, 1.1}, {1, 4, 0.9}, {0, 5, 4.0}}));
  suite.push_back(WeightedGraph(3, {{0, 0, 1, 1.0}, {1, 0, 1, 1.0}, {2, 1, 2, 1.0}, {3, 1, 2, 1.0}}, false));
  return suite;
}

Criterion criterion6() {
  Criterion c;
  const double rho = 2.0;
  int graphs_checked = 0;
  for (const WeightedGraph& g : small_graph_suite()) {
    const VertexId s = 0, t = g.vertex_count - 1;
    const int m = g.edge_count();

    // Exact expectation by enumerating all two-point realizations, with the
    // distance computed by path enumeration rather than the library search.
    std::vector<double> exact_dists;
    double exact_mean = 0.0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<double> w(static_cast<size_t>(g.edge_id_bound()), 0.0);
      for (const Edge& e : g.edges)
        w[static_cast<size_t>(e.id)] = (mask >> e.id & 1) ? rho * e.weight : e.weight;
      const double d = testsupport::brute_shortest(g, w, s, t);
      exact_dists.push_back(d);
      exact_mean += d;
    }
    exact_mean /= static_cast<double>(1 << m);

    // Monte Carlo through the sampling path under test.
    const auto model = IndependentModel::two_point(g, rho);
    const int samples = 100000;
    std::vector<double> mc;
    mc.reserve(samples);
    for (int k = 0; k < samples; ++k) {
      const auto real = sample_independent(model, derive_seed(60, static_cast<std::uint64_t>(k)));
      mc.push_back(shortest_path(g, real.values(), s, t).first);
    }
    const double mc_mean = mean(mc);
    const double se = sample_std(mc) / std::sqrt(static_cast<double>(samples));
    if (std::abs(mc_mean - exact_mean) > 3.0 * se) {
      c.ok = false;
      c.detail << "MC mean off by " << std::abs(mc_mean - exact_mean) << " > 3*SE=" << 3.0 * se
               << " on graph " << graphs_checked << "; ";
    }

    // Full probing must reproduce every enumerated realization exactly.
    ProbingConfig cfg;
    cfg.threshold_override = 0.0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<double> w(static_cast<size_t>(g.edge_id_bound()), 0.0);
      for (const Edge& e : g.edges)
        w[static_cast<size_t>(e.id)] = (mask >> e.id & 1) ? rho * e.weight : e.weight;
      const auto realization = HiddenRealization::from_edge_weights(w);
      const auto res = approximate_length(s, t, model, realization, cfg, 61);
      const double direct = shortest_path(g, w, s, t).first;
      if (res.estimate != direct) {
        c.ok = false;
        c.detail << "full probe differs on graph " << graphs_checked << " mask " << mask << "; ";
        break;
      }
      if (res.estimate > exact_dists[static_cast<size_t>(mask)] + 1e-12 ||
          res.estimate < exact_dists[static_cast<size_t>(mask)] - 1e-12) {
        c.ok = false;
        c.detail << "search and enumeration disagree on graph " << graphs_checked << "; ";
        break;
      }
    }
    ++graphs_checked;
  }
  if (c.ok) c.detail << graphs_checked << " graphs, all realizations exact, MC within 3 SE";
  return c;
}

Criterion criterion7() {
  Criterion c;
  const WeightedGraph g = generate_grid(12, 12, 1.0);
  const auto model = IndependentModel::uniform(g, 2.0);
  const double epsilon = 0.25;
  const std::uint64_t shared_seed = 70;
  const OracleState state = preprocess(g, model, epsilon, shared_seed);

  for (const OracleLevel& level : state.levels) {
    for (VertexId u = 0; u < g.vertex_count; ++u) {
      const auto set_index = level.cover.containment[static_cast<size_t>(u)];
      if (set_index < 0) {
        c.ok = false;
        c.detail << "missing containment entry; ";
        break;
      }
      const auto& set = level.cover.sets[static_cast<size_t>(set_index)];
      const std::set<VertexId> members(set.begin(), set.end());
      for (VertexId v : ball(g, u, level.cover.padding).members)
        if (members.count(v) == 0) {
          c.ok = false;
          c.detail << "cover misses a padded ball; ";
          break;
        }
    }
  }

  ProbingConfig cfg;
  cfg.epsilon = epsilon;
  const auto queries = sample_queries(g, 50, 3.0, 14.0, 71);
  int agreeing = 0;
  for (size_t i = 0; i < queries.size(); ++i) {
    const auto realization = sample_independent(model, derive_seed(72, i));
    const double via_oracle = query(state, queries[i].s, queries[i].t, realization);
    const auto direct =
        approximate_length(queries[i].s, queries[i].t, model, realization, cfg, shared_seed);
    const double ratio = std::max(via_oracle / direct.estimate, direct.estimate / via_oracle);
    if (ratio <= 1.0 + epsilon) ++agreeing;
  }
  if (agreeing != static_cast<int>(queries.size())) c.ok = false;
  c.detail << agreeing << "/" << queries.size() << " queries within (1+eps)";
  return c;
}

Criterion criterion8() {
  Criterion c;
  const WeightedGraph g = generate_grid(20, 20, 1.0);
  const auto model = IndependentModel::uniform(g, 2.0);
  const auto realization = sample_independent(model, 80);
  ProbingConfig cfg;
  cfg.epsilon = 0.3;
  cfg.threshold_override = 1.0;  // no edge above threshold: every edge resampled
  const VertexId s = 0, t = g.vertex_count - 1;
  const double base_dist = shortest_path(g, s, t).first;
  std::vector<double> estimates;
  for (int k = 0; k < 500; ++k)
    estimates.push_back(
        approximate_length(s, t, model, realization, cfg, derive_seed(81, static_cast<std::uint64_t>(k)))
            .estimate);
  const double spread = sample_std(estimates);
  const double bound = cfg.epsilon * base_dist / 2.0;
  c.ok = spread <= bound;
  c.detail << "sample std " << spread << " <= " << bound;
  return c;
}

Criterion criterion9() {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  const auto results = props::run_all(200);
  int passed = 0;
  for (const auto& r : results) {
    if (r.ok) {
      ++passed;
    } else {
      c.ok = false;
      c.detail << "[" << r.name << ": " << r.detail << "] ";
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 300.0) c.ok = false;
  c.detail << passed << "/" << results.size() << " invariants, " << elapsed << " s";
  return c;
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&failures](int index, const char* name, const Criterion& c) {
    std::printf("criterion %d [%s] %s — %s\n", index, name, c.ok ? "PASS" : "FAIL",
                c.detail.str().c_str());
    if (!c.ok) ++failures;
  };

  const GridTrialStats grid_stats = run_grid_trials();
  report(1, "independent-model accuracy", criterion1(grid_stats));
  report(2, "probe economy", criterion2(grid_stats));
  report(3, "chain lower-bound statistics", criterion3());
  report(4, "demand-model accuracy", criterion4());
  report(5, "sweep shape", criterion5());
  report(6, "enumeration equivalence", criterion6());
  report(7, "oracle agreement", criterion7());
  report(8, "concentration", criterion8());
  report(9, "invariant suite", criterion9());

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
