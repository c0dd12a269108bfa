// Command-line front end: instance generation, query sampling, probing runs,
// the preprocess/query oracle, threshold sweeps, the chain lower-bound
// harness, and dimension estimation.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal invariant violation.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tprobe/adversarial.hpp"
#include "tprobe/dimension.hpp"
#include "tprobe/harness.hpp"
#include "tprobe/oracle.hpp"
#include "tprobe/probing.hpp"
#include "tprobe/stats.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw tprobe::Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw tprobe::Error("write failed: " + path);
}

tprobe::DemandModel demand_model_for(const std::string& cluster_file, const tprobe::WeightedGraph& g,
                                     double rho, double beta) {
  if (cluster_file.empty()) return tprobe::singleton_demand_model(g, rho, beta);
  return tprobe::load_demands(cluster_file, g);
}

void print_probing_result(const tprobe::ProbingResult& res) {
  std::cout << "estimate " << tprobe::format_double(res.estimate) << "\n"
            << "probes " << res.probe_count << "\n"
            << "ball_size " << res.ball_size << "\n"
            << "threshold " << tprobe::format_double(res.threshold) << "\n"
            << "fresh_seed " << res.fresh_seed << "\n";
  if (res.path) {
    std::cout << "path_edges";
    for (tprobe::EdgeId e : res.path->edges) std::cout << ' ' << e;
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortest-path estimation under hidden random traffic via probing"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out_path;
  std::string config_path;
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--out", out_path, "output path");
  app.add_option("--config", config_path, "key=value config file");

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance and write it to --out");
  std::string gen_kind = "grid";
  int rows = 20, cols = 20, cluster_len = 10, chain_n = 100;
  double weight = 1.0, highway_weight = 0.25, gen_rho = 2.0, gen_beta = 1.0;
  std::vector<int> highway_rows;
  std::string demands_out;
  gen->add_option("--kind", gen_kind, "grid | highway-grid | chain")->capture_default_str();
  gen->add_option("--rows", rows)->capture_default_str();
  gen->add_option("--cols", cols)->capture_default_str();
  gen->add_option("--weight", weight, "uniform edge weight")->capture_default_str();
  gen->add_option("--highway-rows", highway_rows, "rows that become fast corridors");
  gen->add_option("--highway-weight", highway_weight)->capture_default_str();
  gen->add_option("--cluster-len", cluster_len)->capture_default_str();
  gen->add_option("--rho", gen_rho)->capture_default_str();
  gen->add_option("--beta", gen_beta)->capture_default_str();
  gen->add_option("--n", chain_n, "chain vertex count")->capture_default_str();
  gen->add_option("--demands-out", demands_out, "demand file path (highway-grid)");

  // sample
  auto* sample = app.add_subcommand("sample", "sample s-t queries in a distance window");
  std::string graph_path;
  int query_count = 100;
  double d_min = 5.0, d_max = 20.0;
  sample->add_option("--graph", graph_path)->required();
  sample->add_option("--queries", query_count)->capture_default_str();
  sample->add_option("--d-min", d_min)->capture_default_str();
  sample->add_option("--d-max", d_max)->capture_default_str();

  // probe-length / probe-demands
  auto* probe_len = app.add_subcommand("probe-length", "estimate an s-t traffic distance");
  auto* probe_dem = app.add_subcommand("probe-demands", "demand-model s-t distance estimate");
  std::string pl_graph, pd_graph, pd_clusters;
  int pl_s = 0, pl_t = 1, pd_s = 0, pd_t = 1;
  double pl_rho = 2.0, pl_eps = 0.25, pd_eps = 0.3;
  std::uint64_t pl_real_seed = 7, pl_fresh_seed = 8, pd_real_seed = 7, pd_fresh_seed = 8;
  double pl_threshold = -1.0, pd_threshold = -1.0;
  bool pl_path_mode = false;
  std::uint64_t pl_u = 1;
  probe_len->add_option("--graph", pl_graph)->required();
  probe_len->add_option("--s", pl_s)->required();
  probe_len->add_option("--t", pl_t)->required();
  probe_len->add_option("--rho", pl_rho)->capture_default_str();
  probe_len->add_option("--epsilon", pl_eps)->capture_default_str();
  probe_len->add_option("--realization-seed", pl_real_seed)->capture_default_str();
  probe_len->add_option("--fresh-seed", pl_fresh_seed)->capture_default_str();
  probe_len->add_option("--threshold", pl_threshold, "override the probing threshold");
  probe_len->add_flag("--path-mode", pl_path_mode, "use the log(n*U) threshold");
  probe_len->add_option("--paths-bound", pl_u, "U, the candidate-path bound")->capture_default_str();
  probe_dem->add_option("--graph", pd_graph)->required();
  probe_dem->add_option("--clusters", pd_clusters, "demand file; defaults to singletons");
  probe_dem->add_option("--s", pd_s)->required();
  probe_dem->add_option("--t", pd_t)->required();
  probe_dem->add_option("--epsilon", pd_eps)->capture_default_str();
  probe_dem->add_option("--realization-seed", pd_real_seed)->capture_default_str();
  probe_dem->add_option("--fresh-seed", pd_fresh_seed)->capture_default_str();
  probe_dem->add_option("--threshold", pd_threshold, "override the probing threshold");
  double pd_rho = 2.0, pd_beta = 1.0;
  probe_dem->add_option("--rho", pd_rho, "used when no cluster file is given")->capture_default_str();
  probe_dem->add_option("--beta", pd_beta, "used when no cluster file is given")->capture_default_str();

  // oracle-build / oracle-query
  auto* ob = app.add_subcommand("oracle-build", "preprocess and cache the distance oracle");
  std::string ob_graph;
  double ob_rho = 2.0, ob_eps = 0.25;
  ob->add_option("--graph", ob_graph)->required();
  ob->add_option("--rho", ob_rho)->capture_default_str();
  ob->add_option("--epsilon", ob_eps)->capture_default_str();
  auto* oq = app.add_subcommand("oracle-query", "query a cached distance oracle");
  std::string oq_graph, oq_cache;
  int oq_s = 0, oq_t = 1;
  double oq_rho = 2.0;
  std::uint64_t oq_real_seed = 7;
  oq->add_option("--graph", oq_graph)->required();
  oq->add_option("--cache", oq_cache)->required();
  oq->add_option("--s", oq_s)->required();
  oq->add_option("--t", oq_t)->required();
  oq->add_option("--rho", oq_rho)->capture_default_str();
  oq->add_option("--realization-seed", oq_real_seed)->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "threshold-scale sweep experiment");

  // lowerbound
  auto* lb = app.add_subcommand("lowerbound", "chain-instance strategy statistics");
  int lb_n = 2000, lb_trials = 500, lb_budget = -1;
  std::string lb_strategy = "prefix-greedy";
  lb->add_option("--n", lb_n)->capture_default_str();
  lb->add_option("--trials", lb_trials)->capture_default_str();
  lb->add_option("--budget", lb_budget, "probe budget; default n/100");
  lb->add_option("--strategy", lb_strategy, "omniscient | fixed-row | prefix-greedy")
      ->capture_default_str();

  // dim
  auto* dim = app.add_subcommand("dim", "estimate the doubling exponent of a graph");
  std::string dim_graph;
  int dim_k = 2;
  std::vector<double> dim_scales;
  bool dim_check = false;
  dim->add_option("--graph", dim_graph)->required();
  dim->add_option("--k", dim_k, "subdivision factor")->capture_default_str();
  dim->add_option("--scales", dim_scales, "decreasing radius ladder")->required();
  dim->add_flag("--check-convergence", dim_check, "also estimate at 2k and compare");

  // global flags may appear after the subcommand name
  for (CLI::App* sub : {gen, sample, probe_len, probe_dem, ob, oq, sweep, lb, dim})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      if (out_path.empty()) throw tprobe::InvalidConfigError("gen requires --out");
      if (gen_kind == "grid") {
        tprobe::save_graph(tprobe::generate_grid(rows, cols, weight), out_path);
      } else if (gen_kind == "highway-grid") {
        const auto inst = tprobe::generate_highway_grid(rows, cols, weight, highway_rows,
                                                        highway_weight, cluster_len, gen_rho,
                                                        gen_beta);
        tprobe::save_graph(*inst.graph, out_path);
        tprobe::save_demands(inst.model,
                             demands_out.empty() ? out_path + ".demands" : demands_out);
      } else if (gen_kind == "chain") {
        tprobe::save_graph(*tprobe::generate_chain(chain_n, seed).base, out_path);
      } else {
        throw tprobe::InvalidConfigError("unknown gen kind '" + gen_kind + "'");
      }
    } else if (sample->parsed()) {
      const tprobe::WeightedGraph g = tprobe::load_graph(graph_path);
      const auto queries = tprobe::sample_queries(g, query_count, d_min, d_max, seed);
      std::string text;
      for (const auto& q : queries)
        text += std::to_string(q.s) + " " + std::to_string(q.t) + "\n";
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
    } else if (probe_len->parsed()) {
      const tprobe::WeightedGraph g = tprobe::load_graph(pl_graph);
      const auto model = tprobe::IndependentModel::uniform(g, pl_rho);
      const auto realization = tprobe::sample_independent(model, pl_real_seed);
      tprobe::ProbingConfig cfg;
      cfg.epsilon = pl_eps;
      cfg.path_mode = pl_path_mode;
      cfg.path_count_bound = pl_u;
      if (pl_path_mode) cfg.c = 1.0 / 1024.0;
      if (pl_threshold >= 0.0) cfg.threshold_override = pl_threshold;
      const auto res = pl_path_mode
                           ? tprobe::approximate_path(pl_s, pl_t, model, realization, cfg,
                                                      pl_fresh_seed)
                           : tprobe::approximate_length(pl_s, pl_t, model, realization, cfg,
                                                        pl_fresh_seed);
      print_probing_result(res);
    } else if (probe_dem->parsed()) {
      const tprobe::WeightedGraph g = tprobe::load_graph(pd_graph);
      const auto model = demand_model_for(pd_clusters, g, pd_rho, pd_beta);
      const auto realization = tprobe::sample_demands(model, pd_real_seed);
      tprobe::ProbingConfig cfg;
      cfg.epsilon = pd_eps;
      if (pd_threshold >= 0.0) cfg.threshold_override = pd_threshold;
      print_probing_result(
          tprobe::probing_demands(pd_s, pd_t, model, realization, cfg, pd_fresh_seed));
    } else if (ob->parsed()) {
      if (out_path.empty()) throw tprobe::InvalidConfigError("oracle-build requires --out");
      const tprobe::WeightedGraph g = tprobe::load_graph(ob_graph);
      const auto model = tprobe::IndependentModel::uniform(g, ob_rho);
      const tprobe::OracleState state = tprobe::preprocess(g, model, ob_eps, seed);
      tprobe::save_oracle(state, out_path);
      std::cout << "levels " << state.levels.size() << "\n";
      for (const auto& level : state.levels)
        std::cout << "level " << level.level << " heavy_edges " << level.heavy_edges.size()
                  << " cover_sets " << level.cover.sets.size() << " max_overlap "
                  << level.cover.max_overlap << "\n";
    } else if (oq->parsed()) {
      const tprobe::WeightedGraph g = tprobe::load_graph(oq_graph);
      const tprobe::OracleState state = tprobe::load_oracle(oq_cache, g);
      const auto model = tprobe::IndependentModel::uniform(g, oq_rho);
      const auto realization = tprobe::sample_independent(model, oq_real_seed);
      tprobe::QueryInfo info;
      const double d = tprobe::query(state, oq_s, oq_t, realization, &info);
      std::cout << "distance " << tprobe::format_double(d) << "\n"
                << "level " << info.level << (info.level_clamped ? " (clamped)" : "") << "\n"
                << "overlay_vertices " << info.overlay_vertices << "\n"
                << "probed_edges " << info.probed_edges << "\n";
    } else if (sweep->parsed()) {
      tprobe::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = tprobe::load_config(config_path);
      if (app.count("--seed") > 0) cfg.master_seed = seed;
      if (!out_path.empty()) cfg.out_path = out_path;
      const tprobe::SweepResult result = tprobe::run_sweep(cfg);
      write_file(cfg.out_path, tprobe::records_csv(result));
      const std::string summary = tprobe::summary_csv(result, cfg.percentile);
      write_file(cfg.out_path + ".summary.csv", summary);
      std::cout << summary;
    } else if (lb->parsed()) {
      const int budget = lb_budget >= 0 ? lb_budget : tprobe::fractional_budget(lb_n);
      tprobe::AdaptiveStrategy strategy;
      if (lb_strategy == "omniscient")
        strategy = tprobe::omniscient_strategy(2 * (lb_n - 1));
      else if (lb_strategy == "fixed-row")
        strategy = tprobe::fixed_row_strategy();
      else if (lb_strategy == "prefix-greedy")
        strategy = tprobe::prefix_greedy_strategy(budget);
      else
        throw tprobe::InvalidConfigError("unknown strategy '" + lb_strategy + "'");
      const auto summary = tprobe::estimate_quality_distribution(strategy, lb_n, lb_trials, seed);
      std::cout << "strategy " << strategy.name << "\n"
                << "trials " << summary.trials << "\n"
                << "mean_quality " << tprobe::format_double(summary.mean_quality) << "\n"
                << "p50_quality " << tprobe::format_double(summary.percentile(50)) << "\n"
                << "p90_quality " << tprobe::format_double(summary.percentile(90)) << "\n"
                << "mean_distance_per_gap "
                << tprobe::format_double(summary.mean_distance / (lb_n - 1)) << "\n"
                << "mean_probes " << tprobe::format_double(summary.mean_probes) << "\n";
    } else if (dim->parsed()) {
      const tprobe::WeightedGraph g = tprobe::load_graph(dim_graph);
      const auto est = tprobe::estimate_doubling_dimension(g, dim_k, dim_scales);
      for (size_t i = 0; i < est.scales.size(); ++i)
        std::cout << "scale " << tprobe::format_double(est.scales[i]) << " cover_size "
                  << est.cover_sizes[i] << "\n";
      std::cout << "exponent " << tprobe::format_double(est.exponent) << "\n"
                << "ls_slope " << tprobe::format_double(est.slope) << "\n";
      if (dim_check) {
        const auto conv = tprobe::check_subdivision_convergence(g, dim_k, dim_scales);
        std::cout << "exponent_at_2k " << tprobe::format_double(conv.at_2k.exponent) << "\n"
                  << "converged " << (conv.converged ? 1 : 0) << "\n";
        if (!conv.converged)
          std::cerr << "warning: estimate has not converged in k; increase --k\n";
      }
    }
  } catch (const tprobe::NoCoverSetError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const tprobe::InvalidConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const tprobe::Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
