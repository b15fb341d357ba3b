#include "hgr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "hgr/errors.hpp"
#include "hgr/graph.hpp"
#include "hgr/locality.hpp"
#include "hgr/matching.hpp"
#include "hgr/pipeline.hpp"
#include "hgr/recouple.hpp"

namespace fs = std::filesystem;

namespace hgr::cli {

namespace {

struct InputGraph {
  std::string name;  // file stem
  fs::path edges;
  fs::path meta;
};

struct RunOptions {
  std::string input;
  std::string meta;
  std::string output_dir;
  std::string mode = "konig";
  std::size_t capacity = kDefaultCapacityVectors;
  std::string policy = "lru";
  bool pin_backbone = false;
  bool isolate = true;
  std::size_t max_depth = 2;
  double theta = 0.5;
  std::string format = "text";
  CycleWeights weights;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw ConfigError("write failed for '" + path.string() + "'");
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

template <class F>
std::string render(F&& f) {
  std::ostringstream s;
  f(s);
  return s.str();
}

std::vector<InputGraph> discover_inputs(const RunOptions& o) {
  if (o.input.empty()) throw ConfigError("--input is required");
  const fs::path in(o.input);
  std::vector<InputGraph> graphs;
  if (fs::is_directory(in)) {
    for (const auto& entry : fs::directory_iterator(in))
      if (entry.is_regular_file() && entry.path().extension() == ".edges")
        graphs.push_back({entry.path().stem().string(), entry.path(), fs::path(entry.path()).replace_extension(".meta")});
    std::sort(graphs.begin(), graphs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    if (graphs.empty()) throw ConfigError("no .edges files in '" + in.string() + "'");
    if (!o.meta.empty()) throw ConfigError("--meta cannot be combined with a directory input");
  } else {
    if (!fs::exists(in)) throw ConfigError("input '" + in.string() + "' does not exist");
    graphs.push_back({in.stem().string(), in, o.meta.empty() ? fs::path(in).replace_extension(".meta") : fs::path(o.meta)});
  }
  return graphs;
}

SemanticGraph load_graph(const InputGraph& in) {
  const GraphMeta meta = load_meta_file(in.meta.string());
  return load_edge_list_file(in.edges.string(), meta).graph;
}

// Output directory for one graph: the directory itself for a single input,
// a per-graph subdirectory when a whole directory is processed.
fs::path graph_out_dir(const RunOptions& o, const InputGraph& g, bool many) {
  const fs::path base(o.output_dir);
  return many ? base / g.name : base;
}

// Per-graph work runs concurrently; results and errors are reported in input order.
struct GraphOutcome {
  std::string stdout_text;
  std::string stderr_text;
  int code = kOk;
  std::uint64_t frontend = 0;
  std::uint64_t backend = 0;
};

int classify(const std::exception& e, std::string& msg) {
  msg = e.what();
  if (dynamic_cast<const ParseError*>(&e)) return kParseError;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SchemaError*>(&e)) return kConfigError;
  if (dynamic_cast<const ContractError*>(&e)) return kContractError;
  return kFailure;
}

template <class Work>
std::vector<GraphOutcome> for_each_graph(const std::vector<InputGraph>& graphs, Work&& work) {
  std::vector<GraphOutcome> outcomes(graphs.size());
  const auto n = static_cast<std::int64_t>(graphs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    GraphOutcome& oc = outcomes[i];
    try {
      work(graphs[i], oc);
    } catch (const std::exception& e) {
      std::string msg;
      oc.code = classify(e, msg);
      oc.stderr_text += "error: " + graphs[i].name + ": " + msg + "\n";
    }
  }
  return outcomes;
}

int flush_outcomes(const std::vector<GraphOutcome>& outcomes, std::ostream& out, std::ostream& err) {
  int code = kOk;
  for (const auto& oc : outcomes) {
    out << oc.stdout_text;
    err << oc.stderr_text;
    if (code == kOk) code = oc.code;
  }
  return code;
}

std::string csv_or_text_ext(ReportFormat fmt) { return fmt == ReportFormat::kCsv ? ".csv" : ".txt"; }

// ---- subcommands ----

int cmd_gen(const GeneratorParams& params, const std::string& output_dir, const std::string& name,
            std::ostream& out) {
  if (output_dir.empty()) throw ConfigError("--output-dir is required");
  const SemanticGraph g = gen_synthetic(params);
  const fs::path dir(output_dir);
  ensure_dir(dir);
  write_file(dir / (name + ".edges"), render([&](std::ostream& s) { write_edge_list(s, g); }));
  write_file(dir / (name + ".meta"), render([&](std::ostream& s) { write_meta(s, g.meta()); }));
  out << "wrote " << (dir / (name + ".edges")).string() << " (" << g.num_src() << " src, " << g.num_dst()
      << " dst, " << g.num_edges() << " edges)\n";
  return kOk;
}

void write_summary(std::ostream& s, const std::string& name, const Restructured& r,
                   const RestructurePlan& plan) {
  s << "graph = " << name << '\n'
    << "mode = " << to_string(r.partition.mode) << '\n'
    << "matching_size = " << r.matching.size << '\n'
    << "backbone_size = " << r.partition.backbone_size() << '\n'
    << "src_in = " << r.partition.src_in_count() << '\n'
    << "src_out = " << r.partition.src_in.size() - r.partition.src_in_count() << '\n'
    << "dst_in = " << r.partition.dst_in_count() << '\n'
    << "dst_out = " << r.partition.dst_in.size() - r.partition.dst_in_count() << '\n'
    << "uncovered_edges = " << r.uncovered << '\n'
    << "g1_edges = " << r.triple.g1().graph.num_edges() << '\n'
    << "g2_edges = " << r.triple.g2().graph.num_edges() << '\n'
    << "g3_edges = " << r.triple.g3().graph.num_edges() << '\n'
    << "plan_leaves = " << emission_order(plan).size() << '\n';
}

int cmd_restructure(const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (o.output_dir.empty()) throw ConfigError("--output-dir is required");
  const auto graphs = discover_inputs(o);
  const bool many = graphs.size() > 1 || fs::is_directory(o.input);
  RestructureConfig rc{o.max_depth, o.theta, parse_mode(o.mode)};
  check_config(rc);

  auto outcomes = for_each_graph(graphs, [&](const InputGraph& in, GraphOutcome& oc) {
    const SemanticGraph g = load_graph(in);
    const Restructured r = restructure(g, rc.mode);
    const RestructurePlan plan = restructure_recursive(g, rc, o.capacity);
    const fs::path dir = graph_out_dir(o, in, many);
    ensure_dir(dir);

    write_file(dir / "matching.txt", render([&](std::ostream& s) { write_matching(s, r.matching); }));
    write_file(dir / "partition.txt", render([&](std::ostream& s) { write_partition(s, r.partition); }));
    for (const Subgraph& part : r.triple.parts) {
      const std::string stem = to_string(part.kind);
      write_file(dir / (stem + ".edges"), render([&](std::ostream& s) { write_edge_list(s, part.graph); }));
      write_file(dir / (stem + ".meta"), render([&](std::ostream& s) { write_meta(s, part.graph.meta()); }));
      write_file(dir / (stem + ".remap"), render([&](std::ostream& s) { write_remap(s, part); }));
    }
    write_file(dir / "plan.txt", render([&](std::ostream& s) { write_plan(s, plan); }));
    const std::string summary = render([&](std::ostream& s) { write_summary(s, in.name, r, plan); });
    write_file(dir / "summary.txt", summary);

    oc.stdout_text = summary;
    if (r.uncovered > 0)
      oc.stderr_text += "warning: " + in.name + ": backbone leaves " + std::to_string(r.uncovered) +
                        " edge(s) with both endpoints outside it; routed to g2\n";
  });
  return flush_outcomes(outcomes, out, err);
}

int cmd_simulate(const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (o.output_dir.empty()) throw ConfigError("--output-dir is required");
  const auto graphs = discover_inputs(o);
  const bool many = graphs.size() > 1 || fs::is_directory(o.input);
  RestructureConfig rc{o.max_depth, o.theta, parse_mode(o.mode)};
  check_config(rc);
  BufferConfig bc{o.capacity, parse_policy(o.policy), o.pin_backbone, o.isolate};
  check_config(bc);
  const ReportFormat fmt = parse_format(o.format);
  const std::string ext = csv_or_text_ext(fmt);

  auto outcomes = for_each_graph(graphs, [&](const InputGraph& in, GraphOutcome& oc) {
    const SemanticGraph g = load_graph(in);
    const std::size_t vector_bytes = g.feature_bytes_src();
    const RestructurePlan plan = restructure_recursive(g, rc, o.capacity);
    const AccessTrace base_trace = na_trace_baseline(g);
    const AccessTrace rest_trace = na_trace_plan(plan);
    const SimMetrics base = simulate_buffer(base_trace, bc, vector_bytes);
    const SimMetrics rest = simulate_buffer(rest_trace, bc, vector_bytes);
    const Comparison cmp = compare(base, rest);

    const fs::path dir = graph_out_dir(o, in, many);
    ensure_dir(dir);
    write_file(dir / "plan.txt", render([&](std::ostream& s) { write_plan(s, plan); }));
    write_file(dir / ("baseline.metrics" + ext), render([&](std::ostream& s) { write_metrics(s, base, fmt); }));
    write_file(dir / ("restructured.metrics" + ext), render([&](std::ostream& s) { write_metrics(s, rest, fmt); }));
    const std::string report = render([&](std::ostream& s) { write_comparison(s, cmp, fmt); });
    write_file(dir / ("comparison" + ext), report);

    oc.frontend = frontend_cycles(plan.total_events(), o.weights);
    oc.backend = rest.accesses + rest.fetches_total + rest.writebacks_total;
    std::ostringstream s;
    s << "graph = " << in.name << '\n'
      << "baseline_fetches = " << base.fetches_total << '\n'
      << "restructured_fetches = " << rest.fetches_total << '\n'
      << "oracle_min_fetches = " << oracle_min_fetches(plan) << '\n'
      << "baseline_replacements = " << base.replacements_total << '\n'
      << "restructured_replacements = " << rest.replacements_total << '\n';
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.6f", cmp.dram_access_ratio);
    s << "dram_access_ratio = " << ratio << '\n'
      << "frontend_cycles = " << oc.frontend << '\n'
      << "backend_cycles = " << oc.backend << '\n';
    oc.stdout_text = s.str();
  });

  const int code = flush_outcomes(outcomes, out, err);
  if (code == kOk) {
    std::vector<std::uint64_t> f, b;
    for (const auto& oc : outcomes) {
      f.push_back(oc.frontend);
      b.push_back(oc.backend);
    }
    out << "pipeline_total_cycles = " << pipeline_model(f, b) << '\n';
  }
  return code;
}

SimMetrics load_metrics(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open metrics '" + path + "'");
  try {
    return parse_metrics(f);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

int cmd_compare(const std::string& baseline, const std::string& restructured, const std::string& format,
                std::ostream& out) {
  if (baseline.empty() || restructured.empty()) throw ConfigError("--baseline and --restructured are required");
  const ReportFormat fmt = parse_format(format);
  write_comparison(out, compare(load_metrics(baseline), load_metrics(restructured)), fmt);
  return kOk;
}

int cmd_report(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const auto graphs = discover_inputs(o);
  auto outcomes = for_each_graph(graphs, [&](const InputGraph& in, GraphOutcome& oc) {
    const GraphMeta meta = load_meta_file(in.meta.string());
    const LoadResult loaded = load_edge_list_file(in.edges.string(), meta);
    const SemanticGraph& g = loaded.graph;
    std::ostringstream s;
    s << "graph = " << in.name << '\n'
      << "relation = " << g.relation().name << '\n'
      << "num_src = " << g.num_src() << '\n'
      << "num_dst = " << g.num_dst() << '\n'
      << "num_edges = " << g.num_edges() << '\n';
    write_validation(s, validate(g));
    oc.stdout_text = s.str();
    if (loaded.duplicates > 0)
      oc.stderr_text += "warning: " + in.name + ": dropped " + std::to_string(loaded.duplicates) + " duplicate edge(s)\n";
  });
  return flush_outcomes(outcomes, out, err);
}

void add_graph_input(CLI::App* sub, RunOptions& o) {
  sub->add_option("--input", o.input, "Edge-list file (X.edges beside X.meta) or a directory of them")->required();
  sub->add_option("--meta", o.meta, "Metadata file (default: input with .meta extension)");
}

void add_restructure_options(CLI::App* sub, RunOptions& o) {
  sub->add_option("--mode", o.mode, "Backbone selection: konig | paper-literal")->capture_default_str();
  sub->add_option("--max-depth", o.max_depth, "Recursion depth limit")->capture_default_str();
  sub->add_option("--theta", o.theta, "Stop recursing once the stationary side fits in theta x capacity")
      ->capture_default_str();
  sub->add_option("--capacity", o.capacity, "Buffer capacity in feature vectors")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bipartite semantic-graph restructuring and NA buffer locality simulation"};
  app.require_subcommand(1);

  RunOptions o;
  GeneratorParams gp;
  std::string gen_kind = "uniform";
  std::string gen_name = "graph";
  std::uint64_t seed = 0;
  std::string baseline_path, restructured_path;

  auto* gen = app.add_subcommand("gen", "Generate a synthetic bipartite graph");
  gen->add_option("--kind", gen_kind, "uniform | power-law")->capture_default_str();
  gen->add_option("--num-src", gp.num_src)->required();
  gen->add_option("--num-dst", gp.num_dst)->required();
  gen->add_option("--num-edges", gp.num_edges)->required();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--exponent", gp.exponent, "Zipf exponent for power-law destinations")->capture_default_str();
  gen->add_option("--feature-dim", gp.feature_dim)->capture_default_str();
  gen->add_option("--name", gen_name, "Output file stem")->capture_default_str();
  gen->add_option("--output-dir", o.output_dir)->required();

  auto* res = app.add_subcommand("restructure", "Decouple, recouple and write subgraphs and plan");
  add_graph_input(res, o);
  res->add_option("--output-dir", o.output_dir)->required();
  add_restructure_options(res, o);

  auto* sim = app.add_subcommand("simulate", "Simulate the NA buffer for baseline and restructured schedules");
  add_graph_input(sim, o);
  sim->add_option("--output-dir", o.output_dir)->required();
  add_restructure_options(sim, o);
  sim->add_option("--policy", o.policy, "lru | fifo")->capture_default_str();
  sim->add_flag("--pin-backbone", o.pin_backbone, "Keep each subgraph's stationary side resident");
  sim->add_flag("!--share-buffer", o.isolate, "Carry buffer contents across subgraph boundaries");
  sim->add_option("--format", o.format, "text | csv")->capture_default_str();
  sim->add_option("--cycles-push", o.weights.push)->capture_default_str();
  sim->add_option("--cycles-pop", o.weights.pop)->capture_default_str();
  sim->add_option("--cycles-lookup", o.weights.lookup)->capture_default_str();

  auto* cmp = app.add_subcommand("compare", "Compare two metrics files from the same graph");
  cmp->add_option("--baseline", baseline_path)->required();
  cmp->add_option("--restructured", restructured_path)->required();
  cmp->add_option("--format", o.format, "text | csv")->capture_default_str();

  auto* rep = app.add_subcommand("report", "Validate a graph and print degree statistics");
  add_graph_input(rep, o);

  // CLI11 consumes arguments from the back.
  std::vector<std::string> reversed;
  for (std::size_t i = args.size(); i-- > 1;) reversed.push_back(args[i]);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*gen) {
      gp.kind = parse_generator_kind(gen_kind);
      gp.seed = seed;
      return cmd_gen(gp, o.output_dir, gen_name, out);
    }
    if (*res) return cmd_restructure(o, out, err);
    if (*sim) return cmd_simulate(o, out, err);
    if (*cmp) return cmd_compare(baseline_path, restructured_path, o.format, out);
    if (*rep) return cmd_report(o, out, err);
  } catch (const std::exception& e) {
    std::string msg;
    const int code = classify(e, msg);
    err << "error: " << msg << '\n';
    return code;
  }
  return kFailure;
}

}  // namespace hgr::cli
