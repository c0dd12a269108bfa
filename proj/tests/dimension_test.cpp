#include "tprobe/dimension.hpp"

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tprobe/harness.hpp"
#include "tprobe/probing.hpp"

using namespace tprobe;

TEST_SUITE_BEGIN("dimension");

TEST_CASE("path graph exponent stays near one") {
  const WeightedGraph g = testsupport::path_graph(17);  // diameter 16
  const auto est = estimate_doubling_dimension(g, 4, {4.0, 2.0, 1.0, 0.5});
  CHECK(est.exponent <= 1.5);
  for (size_t i = 1; i < est.cover_sizes.size(); ++i)
    CHECK(est.cover_sizes[i] >= est.cover_sizes[i - 1]);
}

TEST_CASE("grid exponent lands near two") {
  const WeightedGraph g = generate_grid(20, 20, 1.0);
  const auto est = estimate_doubling_dimension(g, 2, {8.0, 4.0, 2.0, 1.0});
  CHECK(est.exponent >= 1.5);
  CHECK(est.exponent <= 3.0);
}

TEST_CASE("single vertex has exponent zero") {
  const WeightedGraph g(1, {}, false);
  const auto est = estimate_doubling_dimension(g, 3, {2.0, 1.0});
  CHECK(est.exponent == 0.0);
  CHECK(est.cover_sizes == std::vector<int>{1, 1});
}

TEST_CASE("subdivision preserves vertex distances") {
  const WeightedGraph g = testsupport::random_connected_graph(10, 6, 3);
  const WeightedGraph sub = subdivide(g, 3);
  for (VertexId v = 0; v < g.vertex_count; ++v)
    CHECK(shortest_path(sub, 0, v).first == doctest::Approx(shortest_path(g, 0, v).first).epsilon(1e-12));
}

TEST_CASE("convergence report on a path") {
  const auto conv = check_subdivision_convergence(testsupport::path_graph(9), 2, {2.0, 1.0, 0.5});
  CHECK(conv.converged);
}

TEST_CASE("count_large_edges") {
  const WeightedGraph g = generate_grid(4, 5, 1.0);
  CHECK(count_large_edges(g, 2.0) == 0);
  CHECK(count_large_edges(g, 0.5) == g.edge_count());

  // Soft shape check: fit the hidden constant on the ladder, then verify the
  // bound with slack across it.
  const WeightedGraph mixed = testsupport::random_connected_graph(30, 20, 8);
  const auto est = estimate_doubling_dimension(mixed, 2, {4.0, 2.0, 1.0});
  double diameter = 0.0;
  for (VertexId v = 0; v < mixed.vertex_count; ++v)
    diameter = std::max(diameter, shortest_path(mixed, 0, v).first);
  const std::vector<double> ladder = {0.5, 1.0, 1.5, 2.0};
  double fitted_c = 0.0;
  for (double r : ladder)
    fitted_c = std::max(fitted_c, count_large_edges(mixed, r) /
                                      std::pow(3.0 * diameter / r, est.exponent));
  for (double r : ladder)
    CHECK(count_large_edges(mixed, r) <=
          2.0 * fitted_c * std::pow(3.0 * diameter / r, est.exponent) + 1e-9);
  MESSAGE("fitted heavy-edge constant: ", fitted_c);
}

TEST_CASE("count_large_clusters against direct enumeration") {
  const auto inst = generate_highway_grid(8, 8, 1.0, {3}, 0.25, 3, 2.0, 1.0);
  const WeightedGraph normalized = normalize_demands(inst.model);
  std::vector<std::vector<EdgeId>> clusters;
  for (int i = 0; i < inst.model.demand_count(); ++i) clusters.push_back(inst.model.cluster(i));

  const VertexId center = 27;
  const double radius = 4.0;
  const std::vector<double> ladder = {1e-9, 0.5, 0.8, 2.0, 1000.0};
  const auto counts = count_large_clusters(normalized, clusters, center, radius, ladder);

  // Independent re-implementation straight from the definition.
  const Ball b = ball(normalized, center, radius);
  for (size_t gi = 0; gi < ladder.size(); ++gi) {
    int expected = 0;
    for (const auto& cluster : clusters) {
      double size = 0.0;
      bool touches = false;
      for (EdgeId e : cluster) {
        const Edge* edge = normalized.find_edge(e);
        size += edge->weight;
        touches = touches || b.contains(edge->u) || b.contains(edge->v);
      }
      if (touches && size >= ladder[gi]) ++expected;
    }
    CHECK(counts[gi] == expected);
  }
  CHECK(counts.back() == 0);  // gamma above the total graph weight
  int touching = 0;
  for (const auto& cluster : clusters) {
    bool touches = false;
    for (EdgeId e : cluster) {
      const Edge* edge = normalized.find_edge(e);
      touches = touches || b.contains(edge->u) || b.contains(edge->v);
    }
    touching += touches ? 1 : 0;
  }
  CHECK(counts.front() == touching);  // gamma -> 0 counts every touching cluster
}

TEST_SUITE_END();
