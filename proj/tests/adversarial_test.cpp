#include "tprobe/adversarial.hpp"

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tprobe/stats.hpp"

using namespace tprobe;

TEST_SUITE_BEGIN("adversarial");

TEST_CASE("smallest chain") {
  const ChainInstance chain = generate_chain(2, 1);
  CHECK(chain.base->vertex_count == 2);
  CHECK(chain.base->edge_count() == 2);
  for (const Edge& e : chain.base->edges) CHECK(e.weight == 1.0);
  for (double v : chain.realization.values()) {
    CHECK(v >= 1.0);
    CHECK(v <= 2.0);
  }
}

TEST_CASE("distance equals the sum of per-gap minima") {
  for (int n : {2, 10, 200}) {
    const ChainInstance chain = generate_chain(n, static_cast<std::uint64_t>(n));
    double expected = 0.0;
    for (int i = 0; i + 1 < n; ++i)
      expected += std::min(chain.realization.values()[static_cast<size_t>(2 * i)],
                           chain.realization.values()[static_cast<size_t>(2 * i + 1)]);
    const double via_search = shortest_path(*chain.base, chain.realization.values(), 0, n - 1).first;
    CHECK(via_search == expected);
  }
}

TEST_CASE("per-gap minimum averages 4/3") {
  // E[min(U,V)] for independent U,V ~ U[1,2] is 4/3.
  double total = 0.0;
  const int gaps = 100000;
  Rng rng(97);
  for (int i = 0; i < gaps; ++i) total += std::min(rng.next_in(1.0, 2.0), rng.next_in(1.0, 2.0));
  CHECK(total / gaps == doctest::Approx(4.0 / 3.0).epsilon(0.01));
}

TEST_CASE("omniscient strategy is exact") {
  const ChainInstance chain = generate_chain(60, 5);
  const auto run = run_strategy(omniscient_strategy(chain.base->edge_count()), *chain.base,
                                chain.realization);
  CHECK(run.quality == 1.0);
  CHECK(run.probes_used == chain.base->edge_count());

  const auto summary = estimate_quality_distribution(omniscient_strategy(2 * 29), 30, 50, 6);
  for (double q : summary.qualities) CHECK(q == 1.0);
  CHECK(summary.percentile(90) == 1.0);
}

TEST_CASE("zero-budget quality concentrates at 9/8") {
  const auto summary = estimate_quality_distribution(fixed_row_strategy(), 2000, 200, 1234);
  CHECK(summary.mean_quality == doctest::Approx(9.0 / 8.0).epsilon(0.01 / 1.125));
  CHECK(summary.mean_probes == 0.0);
}

TEST_CASE("prefix-greedy stays above the lower bound") {
  const int n = 2000;
  const auto summary = estimate_quality_distribution(prefix_greedy_strategy(fractional_budget(n)), n, 100, 555);
  int above = 0;
  for (double q : summary.qualities)
    if (q > 9.0 / 8.0 - 0.1) ++above;
  CHECK(above >= 95);
}

TEST_CASE("budget is enforced") {
  const ChainInstance chain = generate_chain(10, 9);
  AdaptiveStrategy greedy_over = prefix_greedy_strategy(3);
  greedy_over.budget = 2;  // step function still wants 3 probes
  CHECK_THROWS_AS(run_strategy(greedy_over, *chain.base, chain.realization), BudgetExceededError);
}

TEST_CASE("invalid paths are rejected") {
  const ChainInstance chain = generate_chain(5, 11);
  AdaptiveStrategy bogus;
  bogus.name = "bogus";
  bogus.budget = 0;
  bogus.step = [](const StrategyContext& ctx) -> StrategyAction {
    Path p;
    p.vertices = {0, ctx.base.vertex_count - 1};
    p.edges = {0};  // edge 0 joins 0 and 1, not 0 and n-1
    return PathOutput{p};
  };
  CHECK_THROWS_AS(run_strategy(bogus, *chain.base, chain.realization), InvalidPathError);
}

TEST_CASE("transcript only carries the strategy's own probes") {
  const ChainInstance chain = generate_chain(8, 13);
  chain.realization.probe_edge(5);  // outside probe must stay invisible
  AdaptiveStrategy probe_two;
  probe_two.name = "probe-two";
  probe_two.budget = 2;
  probe_two.step = [&](const StrategyContext& ctx) -> StrategyAction {
    for (const auto& [e, w] : ctx.transcript) {
      CHECK((e == 0 || e == 2));
      CHECK(w == chain.realization.values()[static_cast<size_t>(e)]);
    }
    if (ctx.transcript.size() == 0) return ProbeRequest{0};
    if (ctx.transcript.size() == 1) return ProbeRequest{2};
    std::vector<EdgeId> pick;
    for (int i = 0; i + 1 < ctx.base.vertex_count; ++i)
      pick.push_back(ChainInstance::upper_edge(i));
    Path p;
    p.vertices.push_back(0);
    for (int i = 0; i + 1 < ctx.base.vertex_count; ++i) {
      p.vertices.push_back(i + 1);
      p.edges.push_back(pick[static_cast<size_t>(i)]);
    }
    return PathOutput{p};
  };
  const auto run = run_strategy(probe_two, *chain.base, chain.realization);
  CHECK(run.probes_used == 2);
  CHECK(run.quality >= 1.0);
}

TEST_CASE("distance stays under the concentration ceiling") {
  const int n = 2000;
  int under = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const ChainInstance chain = generate_chain(n, derive_seed(777, static_cast<std::uint64_t>(t)));
    double dist = 0.0;
    for (int i = 0; i + 1 < n; ++i)
      dist += std::min(chain.realization.values()[static_cast<size_t>(2 * i)],
                       chain.realization.values()[static_cast<size_t>(2 * i + 1)]);
    if (dist <= 4.0 * n / 3.0 + n / 100.0) ++under;
  }
  CHECK(under >= (trials * 99) / 100);
}

TEST_SUITE_END();
