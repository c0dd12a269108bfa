#include "tprobe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "tprobe/stats.hpp"

namespace tprobe {

WeightedGraph generate_grid(int rows, int cols, double weight) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  auto at = [cols](int r, int c) { return static_cast<VertexId>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(at(r, c), at(r, c + 1), weight);
      if (r + 1 < rows) edges.emplace_back(at(r, c), at(r + 1, c), weight);
    }
  }
  return WeightedGraph::build(rows * cols, edges, false);
}

HighwayGridInstance generate_highway_grid(int rows, int cols, double local_weight,
                                          const std::vector<int>& highway_rows,
                                          double highway_weight, int cluster_len, double rho,
                                          double beta) {
  if (cluster_len < 1) throw std::invalid_argument("cluster_len must be >= 1");
  for (int r : highway_rows)
    if (r < 0 || r >= rows) throw std::invalid_argument("highway row out of range");

  std::vector<char> is_highway_row(static_cast<size_t>(rows), 0);
  for (int r : highway_rows) is_highway_row[static_cast<size_t>(r)] = 1;

  // Same edge order as generate_grid; horizontal edges on highway rows are fast.
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  std::vector<std::vector<EdgeId>> row_edges(static_cast<size_t>(rows));
  auto at = [cols](int r, int c) { return static_cast<VertexId>(r * cols + c); };
  EdgeId next_id = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        const bool fast = is_highway_row[static_cast<size_t>(r)] != 0;
        edges.emplace_back(at(r, c), at(r, c + 1), fast ? highway_weight : local_weight);
        if (fast) row_edges[static_cast<size_t>(r)].push_back(next_id);
        ++next_id;
      }
      if (r + 1 < rows) {
        edges.emplace_back(at(r, c), at(r + 1, c), local_weight);
        ++next_id;
      }
    }
  }

  HighwayGridInstance inst;
  inst.graph =
      std::make_shared<const WeightedGraph>(WeightedGraph::build(rows * cols, edges, false));

  std::vector<char> clustered(static_cast<size_t>(inst.graph->edge_count()), 0);
  std::vector<DemandTriple> deps;
  int demand = 0;
  for (int r : highway_rows) {
    const auto& ids = row_edges[static_cast<size_t>(r)];
    for (size_t start = 0; start < ids.size(); start += static_cast<size_t>(cluster_len)) {
      const size_t stop = std::min(ids.size(), start + static_cast<size_t>(cluster_len));
      for (size_t k = start; k < stop; ++k) {
        deps.push_back({demand, ids[k], 1.0});
        clustered[static_cast<size_t>(ids[k])] = 1;
      }
      ++demand;
    }
  }
  inst.highway_cluster_count = demand;
  for (const Edge& e : inst.graph->edges) {
    if (clustered[static_cast<size_t>(e.id)]) continue;
    deps.push_back({demand++, e.id, 1.0});
  }
  inst.model = DemandModel(*inst.graph, rho, beta, std::vector<double>(demand, 1.0), deps);
  return inst;
}

DemandModel singleton_demand_model(const WeightedGraph& g, double rho, double beta) {
  std::vector<DemandTriple> deps;
  int demand = 0;
  for (const Edge& e : g.edges) deps.push_back({demand++, e.id, 1.0});
  return DemandModel(g, rho, beta, std::vector<double>(demand, 1.0), deps);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

static double parse_double_token(const std::string& tok, int line_no) {
  double value = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError("bad number '" + tok + "'", line_no);
  return value;
}

static long parse_int_token(const std::string& tok, int line_no) {
  long value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError("bad integer '" + tok + "'", line_no);
  return value;
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "graph v=" << g.vertex_count << " directed=" << (g.directed ? 1 : 0) << "\n";
  std::vector<const Edge*> by_id;
  by_id.reserve(g.edges.size());
  for (const Edge& e : g.edges) by_id.push_back(&e);
  std::sort(by_id.begin(), by_id.end(), [](const Edge* a, const Edge* b) { return a->id < b->id; });
  for (const Edge* e : by_id)
    out << e->id << ' ' << e->u << ' ' << e->v << ' ' << format_double(e->weight) << "\n";
  if (!out) throw Error("write failed: " + path);
}

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty graph file", 1);
  ++line_no;
  int n = -1, directed = -1;
  {
    std::istringstream head(line);
    std::string tag, vfield, dfield;
    head >> tag >> vfield >> dfield;
    if (tag != "graph" || vfield.rfind("v=", 0) != 0 || dfield.rfind("directed=", 0) != 0)
      throw ParseError("expected 'graph v=<n> directed=<0|1>'", line_no);
    n = static_cast<int>(parse_int_token(vfield.substr(2), line_no));
    directed = static_cast<int>(parse_int_token(dfield.substr(9), line_no));
    if (n < 0 || (directed != 0 && directed != 1)) throw ParseError("bad graph header", line_no);
  }

  std::vector<Edge> edges;
  std::vector<char> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id_tok, u_tok, v_tok, w_tok;
    if (!(row >> id_tok >> u_tok >> v_tok >> w_tok))
      throw ParseError("expected '<edge_id> <u> <v> <weight>'", line_no);
    Edge e;
    e.id = static_cast<EdgeId>(parse_int_token(id_tok, line_no));
    e.u = static_cast<VertexId>(parse_int_token(u_tok, line_no));
    e.v = static_cast<VertexId>(parse_int_token(v_tok, line_no));
    e.weight = parse_double_token(w_tok, line_no);
    if (e.id < 0) throw ParseError("edge id must be >= 0", line_no);
    if (e.weight <= 0.0) throw NegativeWeightError("edge weight must be positive", line_no);
    if (static_cast<size_t>(e.id) >= seen.size()) seen.resize(static_cast<size_t>(e.id) + 1, 0);
    if (seen[static_cast<size_t>(e.id)])
      throw DuplicateEdgeIdError("duplicate edge id " + std::to_string(e.id), line_no);
    seen[static_cast<size_t>(e.id)] = 1;
    edges.push_back(e);
  }
  if (seen.size() != edges.size()) throw ParseError("edge ids are not dense 0..m-1", line_no);
  try {
    return WeightedGraph(n, std::move(edges), directed == 1);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what(), line_no);
  }
}

void save_demands(const DemandModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "demands m=" << model.demand_count() << " beta=" << format_double(model.beta) << "\n";
  for (int i = 0; i < model.demand_count(); ++i)
    out << i << ' ' << format_double(model.lambda[static_cast<size_t>(i)]) << ' '
        << format_double(model.rho) << "\n";
  for (int i = 0; i < model.demand_count(); ++i)
    for (const auto& [e, l] : model.cluster_edges[static_cast<size_t>(i)])
      out << i << ' ' << e << ' ' << format_double(l) << "\n";
  if (!out) throw Error("write failed: " + path);
}

DemandModel load_demands(const std::string& path, const WeightedGraph& g) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty demand file", 1);
  ++line_no;
  int m = -1;
  double beta = 0.0;
  {
    std::istringstream head(line);
    std::string tag, mfield, bfield;
    head >> tag >> mfield >> bfield;
    if (tag != "demands" || mfield.rfind("m=", 0) != 0 || bfield.rfind("beta=", 0) != 0)
      throw ParseError("expected 'demands m=<m> beta=<beta>'", line_no);
    m = static_cast<int>(parse_int_token(mfield.substr(2), line_no));
    beta = parse_double_token(bfield.substr(5), line_no);
    if (m < 0) throw ParseError("bad demand count", line_no);
  }

  std::vector<double> lambda(static_cast<size_t>(m), 0.0);
  double rho = 1.0;
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing demand header line", line_no + 1);
    ++line_no;
    std::istringstream row(line);
    std::string id_tok, l_tok, r_tok;
    if (!(row >> id_tok >> l_tok >> r_tok))
      throw ParseError("expected '<demand_id> <lambda> <rho>'", line_no);
    if (parse_int_token(id_tok, line_no) != i)
      throw ParseError("demand header lines must appear in id order", line_no);
    lambda[static_cast<size_t>(i)] = parse_double_token(l_tok, line_no);
    const double row_rho = parse_double_token(r_tok, line_no);
    if (i == 0)
      rho = row_rho;
    else if (row_rho != rho)
      throw ParseError("rho must match across demand lines", line_no);
  }

  std::vector<DemandTriple> deps;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string d_tok, e_tok, l_tok;
    if (!(row >> d_tok >> e_tok >> l_tok))
      throw ParseError("expected '<demand_id> <edge_id> <lambda_i_e>'", line_no);
    DemandTriple t;
    t.demand = static_cast<int>(parse_int_token(d_tok, line_no));
    t.edge = static_cast<EdgeId>(parse_int_token(e_tok, line_no));
    t.lambda = parse_double_token(l_tok, line_no);
    deps.push_back(t);
  }
  try {
    return DemandModel(g, rho, beta, std::move(lambda), deps);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what(), line_no);
  }
}

std::vector<QueryPair> sample_queries(const WeightedGraph& g, int count, double d_min, double d_max,
                                      std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("query count must be >= 1");
  Rng rng(derive_seed(seed, 0x5eed));
  std::vector<QueryPair> out;
  long rejections = 0;
  while (static_cast<int>(out.size()) < count) {
    const auto s = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(g.vertex_count)));
    const auto t = static_cast<VertexId>(rng.next_below(static_cast<std::uint64_t>(g.vertex_count)));
    bool ok = s != t;
    double d = 0.0;
    if (ok) {
      d = shortest_path_tree(g, s, {}, d_max).dist[static_cast<size_t>(t)];
      ok = d >= d_min && d <= d_max;
    }
    if (ok) {
      out.push_back({s, t, d});
    } else if (++rejections >= 1000000) {
      throw NoValidPairsError("no vertex pair found in the distance window");
    }
  }
  return out;
}

double level_distance(double L, double L_min) {
  if (!(L_min > 0.0) || L < L_min) throw std::invalid_argument("need L >= L_min > 0");
  return L_min * std::exp2(std::floor(std::log2(L / L_min)));
}

double experiment_threshold_formula(double L, double L_min, double epsilon, int n, double t_s) {
  if (!(t_s > 0.0)) throw std::invalid_argument("threshold scale must be > 0");
  const double l_hat = level_distance(L, L_min);
  return l_hat * epsilon * epsilon / (std::log(static_cast<double>(std::max(n, 2))) * t_s);
}

void ExperimentConfig::validate() const {
  if (generator != "grid" && generator != "highway-grid" && generator != "file")
    throw InvalidConfigError("unknown generator '" + generator + "'");
  if (generator == "file" && graph_file.empty())
    throw InvalidConfigError("generator=file requires graph_file");
  if (!(d_min < d_max)) throw InvalidConfigError("d_min must be < d_max");
  if (query_count < 1) throw InvalidConfigError("query_count must be >= 1");
  if (threshold_scales.empty()) throw InvalidConfigError("need at least one threshold scale");
  for (double ts : threshold_scales)
    if (!(ts > 0.0)) throw InvalidConfigError("threshold scales must be > 0");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw InvalidConfigError("epsilon must be in (0,1)");
  if (!(percentile > 0.0) || percentile > 100.0)
    throw InvalidConfigError("percentile must be in (0,100]");
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : value) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "generator") cfg.generator = value;
    else if (key == "rows") cfg.rows = static_cast<int>(parse_int_token(value, line_no));
    else if (key == "cols") cfg.cols = static_cast<int>(parse_int_token(value, line_no));
    else if (key == "local_weight") cfg.local_weight = parse_double_token(value, line_no);
    else if (key == "highway_rows") {
      cfg.highway_rows.clear();
      for (const auto& part : split_list(value))
        cfg.highway_rows.push_back(static_cast<int>(parse_int_token(trim(part), line_no)));
    } else if (key == "highway_weight") cfg.highway_weight = parse_double_token(value, line_no);
    else if (key == "cluster_len") cfg.cluster_len = static_cast<int>(parse_int_token(value, line_no));
    else if (key == "graph_file") cfg.graph_file = value;
    else if (key == "cluster_file") cfg.cluster_file = value;
    else if (key == "rho") cfg.rho = parse_double_token(value, line_no);
    else if (key == "beta") cfg.beta = parse_double_token(value, line_no);
    else if (key == "queries") cfg.query_count = static_cast<int>(parse_int_token(value, line_no));
    else if (key == "d_min") cfg.d_min = parse_double_token(value, line_no);
    else if (key == "d_max") cfg.d_max = parse_double_token(value, line_no);
    else if (key == "threshold_scales") {
      cfg.threshold_scales.clear();
      for (const auto& part : split_list(value))
        cfg.threshold_scales.push_back(parse_double_token(trim(part), line_no));
    } else if (key == "epsilon") cfg.epsilon = parse_double_token(value, line_no);
    else if (key == "percentile") cfg.percentile = parse_double_token(value, line_no);
    else if (key == "seed") cfg.master_seed = static_cast<std::uint64_t>(parse_int_token(value, line_no));
    else if (key == "out") cfg.out_path = value;
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int_token(value, line_no));
    else throw ParseError("unknown config key '" + key + "'", line_no);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

// Seed streams for the sweep's independent random draws.
enum SweepStream : std::uint64_t { kQueries = 1, kRealization = 2, kNoProbe = 3, kFresh = 4 };

std::uint64_t sweep_seed(std::uint64_t master, SweepStream stream, std::uint64_t index) {
  return derive_seed(derive_seed(master, static_cast<std::uint64_t>(stream)), index);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();

  // Build the instance: a graph plus a demand model over it.
  std::shared_ptr<const WeightedGraph> graph;
  DemandModel model;
  if (cfg.generator == "file") {
    auto loaded = std::make_shared<WeightedGraph>(load_graph(cfg.graph_file));
    graph = loaded;
    model = cfg.cluster_file.empty() ? singleton_demand_model(*graph, cfg.rho, cfg.beta)
                                     : load_demands(cfg.cluster_file, *graph);
  } else {
    const std::vector<int> rows = cfg.generator == "grid" ? std::vector<int>{} : cfg.highway_rows;
    HighwayGridInstance inst = generate_highway_grid(cfg.rows, cfg.cols, cfg.local_weight, rows,
                                                     cfg.highway_weight, cfg.cluster_len, cfg.rho,
                                                     cfg.beta);
    graph = inst.graph;
    model = std::move(inst.model);
  }

  const WeightedGraph normalized = normalize_demands(model);
  const std::vector<QueryPair> queries = sample_queries(
      normalized, cfg.query_count, cfg.d_min, cfg.d_max, sweep_seed(cfg.master_seed, kQueries, 0));
  double min_query_dist = queries.front().base_dist;
  for (const QueryPair& q : queries) min_query_dist = std::min(min_query_dist, q.base_dist);

  const int ts_count = static_cast<int>(cfg.threshold_scales.size());
  SweepResult result;
  result.total_clusters = model.demand_count();
  result.records.assign(static_cast<size_t>(ts_count) * queries.size(), {});

  std::atomic<int> next_query{0};
  auto worker = [&]() {
    for (;;) {
      const int q = next_query.fetch_add(1);
      if (q >= static_cast<int>(queries.size())) return;
      const auto start = std::chrono::steady_clock::now();
      const QueryPair& query = queries[static_cast<size_t>(q)];

      const HiddenRealization truth =
          sample_demands(model, sweep_seed(cfg.master_seed, kRealization, static_cast<std::uint64_t>(q)));
      const std::vector<double> actual = realized_weights(model, truth.values());
      const double optimum = shortest_path(*graph, actual, query.s, query.t).first;

      const HiddenRealization no_probe_draw =
          sample_demands(model, sweep_seed(cfg.master_seed, kNoProbe, static_cast<std::uint64_t>(q)));
      const std::vector<double> no_probe_weights = realized_weights(model, no_probe_draw.values());
      const Path no_probe_path = shortest_path(*graph, no_probe_weights, query.s, query.t).second;
      const double noprobe_ratio = path_length(actual, no_probe_path) / optimum;

      for (int j = 0; j < ts_count; ++j) {
        const double ts = cfg.threshold_scales[static_cast<size_t>(j)];
        const double gamma = experiment_threshold_formula(query.base_dist, min_query_dist,
                                                          cfg.epsilon, graph->vertex_count, ts);
        ProbingConfig pcfg;
        pcfg.epsilon = cfg.epsilon;
        pcfg.threshold_override = gamma;
        // One fresh-sample stream per query, shared across scales: as the
        // threshold drops, probed values replace resamples edge set by edge
        // set, which keeps the sweep curve free of resampling noise.
        const ProbingResult res =
            probing_demands(query.s, query.t, model, truth, pcfg,
                            sweep_seed(cfg.master_seed, kFresh, static_cast<std::uint64_t>(q)));
        ExperimentRecord rec;
        rec.ts_index = j;
        rec.ts = ts;
        rec.query_id = q;
        rec.s = query.s;
        rec.t = query.t;
        rec.base_dist = query.base_dist;
        rec.level_dist = level_distance(query.base_dist, min_query_dist);
        rec.gamma = gamma;
        rec.probe_count = res.probe_count;
        rec.probed_fraction =
            static_cast<double>(res.probe_count) / static_cast<double>(model.demand_count());
        rec.probed_ratio = path_length(actual, *res.path) / optimum;
        rec.noprobe_ratio = noprobe_ratio;
        rec.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        result.records[static_cast<size_t>(j) * queries.size() + static_cast<size_t>(q)] = rec;
      }
    }
  };

  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(queries.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (int j = 0; j < ts_count; ++j) {
    SweepSummary summary;
    summary.ts = cfg.threshold_scales[static_cast<size_t>(j)];
    std::vector<double> probed, noprobe;
    for (size_t q = 0; q < queries.size(); ++q) {
      const ExperimentRecord& rec = result.records[static_cast<size_t>(j) * queries.size() + q];
      summary.max_probed_fraction = std::max(summary.max_probed_fraction, rec.probed_fraction);
      probed.push_back(rec.probed_ratio);
      noprobe.push_back(rec.noprobe_ratio);
    }
    summary.probed_ratio_percentile = nearest_rank_percentile(probed, cfg.percentile);
    summary.noprobe_ratio_percentile = nearest_rank_percentile(noprobe, cfg.percentile);
    result.summaries.push_back(summary);
  }
  return result;
}

std::string records_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "# tprobe sweep records v1\n";
  out << "ts_index,ts,query_id,s,t,L,L_hat,gamma,probe_count,probed_fraction,probed_ratio,"
         "noprobe_ratio\n";
  for (const ExperimentRecord& r : result.records) {
    out << r.ts_index << ',' << format_double(r.ts) << ',' << r.query_id << ',' << r.s << ','
        << r.t << ',' << format_double(r.base_dist) << ',' << format_double(r.level_dist) << ','
        << format_double(r.gamma) << ',' << r.probe_count << ','
        << format_double(r.probed_fraction) << ',' << format_double(r.probed_ratio) << ','
        << format_double(r.noprobe_ratio) << "\n";
  }
  return out.str();
}

std::string summary_csv(const SweepResult& result, double percentile) {
  std::ostringstream out;
  out << "# tprobe sweep summary v1\n";
  out << "ts,max_probed_fraction,p" << format_double(percentile) << "_probed_ratio,p"
      << format_double(percentile) << "_noprobe_ratio\n";
  for (const SweepSummary& s : result.summaries) {
    out << format_double(s.ts) << ',' << format_double(s.max_probed_fraction) << ','
        << format_double(s.probed_ratio_percentile) << ','
        << format_double(s.noprobe_ratio_percentile) << "\n";
  }
  return out.str();
}

}  // namespace tprobe
