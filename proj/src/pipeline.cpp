#include "hgr/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "hgr/errors.hpp"

namespace hgr {

void check_config(const RestructureConfig& cfg) {
  if (!(cfg.fit_fraction > 0.0 && cfg.fit_fraction <= 1.0))
    throw ConfigError("fit fraction (theta) must lie in (0, 1]");
}

DecoupleEvents RestructurePlan::total_events() const {
  DecoupleEvents t;
  for (const auto& n : nodes) {
    t.pushes += n.events.pushes;
    t.pops += n.events.pops;
    t.lookups += n.events.lookups;
  }
  return t;
}

namespace {

std::vector<VertexId> compose(const std::vector<VertexId>& outer, const std::vector<VertexId>& inner) {
  std::vector<VertexId> out;
  out.reserve(inner.size());
  for (const VertexId local : inner) out.push_back(outer[local]);
  return out;
}

std::vector<VertexId> identity(std::size_t n) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return ids;
}

void expand(RestructurePlan& plan, std::size_t index, double fit_limit) {
  const Restructured r = restructure(plan.nodes[index].graph, plan.config.mode);
  {
    PlanNode& node = plan.nodes[index];
    node.restructured = true;
    node.events = r.events;
    node.matching_size = r.matching.size;
    node.src_in = r.partition.src_in_count();
    node.src_out = node.graph.num_src() - node.src_in;
    node.dst_in = r.partition.dst_in_count();
    node.dst_out = node.graph.num_dst() - node.dst_in;
    node.uncovered = r.uncovered;
  }

  for (const Subgraph& part : r.triple.parts) {
    if (part.graph.empty()) continue;
    const PlanNode& parent = plan.nodes[index];
    PlanNode child;
    child.lineage = (parent.depth == 0 ? std::string() : parent.lineage + ".") + to_string(part.kind);
    child.depth = parent.depth + 1;
    child.kind = part.kind;
    child.graph = part.graph;
    child.src_ids = compose(parent.src_ids, part.src_ids);
    child.dst_ids = compose(parent.dst_ids, part.dst_ids);

    const std::size_t child_index = plan.nodes.size();
    plan.nodes.push_back(std::move(child));
    plan.nodes[index].children.push_back(child_index);

    const PlanNode& c = plan.nodes[child_index];
    if (c.depth < plan.config.max_depth && static_cast<double>(c.stationary_size()) > fit_limit)
      expand(plan, child_index, fit_limit);
  }
}

void collect_leaves(const RestructurePlan& plan, std::size_t index, std::vector<std::size_t>& out) {
  const PlanNode& n = plan.nodes[index];
  if (n.is_leaf()) {
    out.push_back(index);
    return;
  }
  for (const std::size_t c : n.children) collect_leaves(plan, c, out);
}

std::size_t touched_vertices(const SemanticGraph& g) {
  std::size_t n = 0;
  for (VertexId u = 0; u < g.num_src(); ++u) n += g.out_degree(u) > 0;
  for (VertexId v = 0; v < g.num_dst(); ++v) n += g.in_degree(v) > 0;
  return n;
}

}  // namespace

RestructurePlan restructure_recursive(const SemanticGraph& g, const RestructureConfig& cfg,
                                      std::size_t buffer_capacity) {
  check_config(cfg);
  RestructurePlan plan;
  plan.root_src = g.num_src();
  plan.root_dst = g.num_dst();
  plan.fingerprint = g.fingerprint();
  plan.config = cfg;
  plan.capacity = buffer_capacity;

  PlanNode root;
  root.lineage = "root";
  root.graph = g;
  root.src_ids = identity(g.num_src());
  root.dst_ids = identity(g.num_dst());
  plan.nodes.push_back(std::move(root));

  if (cfg.max_depth > 0) expand(plan, 0, cfg.fit_fraction * static_cast<double>(buffer_capacity));
  return plan;
}

std::vector<std::size_t> emission_order(const RestructurePlan& plan) {
  std::vector<std::size_t> out;
  if (!plan.nodes.empty()) collect_leaves(plan, 0, out);
  return out;
}

AccessTrace na_trace_plan(const RestructurePlan& plan) {
  AccessTrace t;
  t.num_src = plan.root_src;
  t.num_dst = plan.root_dst;
  t.fingerprint = plan.fingerprint;
  for (const std::size_t i : emission_order(plan)) {
    const PlanNode& n = plan.nodes[i];
    append_subgraph_trace(t, n.graph, n.kind, n.src_ids, n.dst_ids);
  }
  return t;
}

std::uint64_t oracle_min_fetches(const RestructurePlan& plan) {
  std::uint64_t total = 0;
  for (const std::size_t i : emission_order(plan)) total += touched_vertices(plan.nodes[i].graph);
  return total;
}

std::uint64_t frontend_cycles(const DecoupleEvents& ev, const CycleWeights& w) {
  return ev.pushes * w.push + ev.pops * w.pop + ev.lookups * w.lookup;
}

std::uint64_t pipeline_model(const std::vector<std::uint64_t>& frontend, const std::vector<std::uint64_t>& backend) {
  if (frontend.size() != backend.size())
    throw ConfigError("pipeline model needs one frontend and one backend estimate per graph (" +
                      std::to_string(frontend.size()) + " vs " + std::to_string(backend.size()) + ")");
  if (frontend.empty()) return 0;
  std::uint64_t total = frontend.front() + backend.back();
  for (std::size_t i = 0; i + 1 < frontend.size(); ++i) total += std::max(frontend[i + 1], backend[i]);
  return total;
}

void write_plan(std::ostream& out, const RestructurePlan& plan) {
  char theta[32];
  std::snprintf(theta, sizeof theta, "%.6f", plan.config.fit_fraction);
  out << "root_src = " << plan.root_src << '\n'
      << "root_dst = " << plan.root_dst << '\n'
      << "mode = " << to_string(plan.config.mode) << '\n'
      << "max_depth = " << plan.config.max_depth << '\n'
      << "theta = " << theta << '\n'
      << "capacity = " << plan.capacity << '\n'
      << "leaves = " << emission_order(plan).size() << '\n';
  for (const PlanNode& n : plan.nodes) {
    out << std::string(2 * n.depth, ' ') << "node " << n.lineage << " depth=" << n.depth
        << " kind=" << to_string(n.kind) << " src=" << n.graph.num_src() << " dst=" << n.graph.num_dst()
        << " edges=" << n.graph.num_edges();
    if (n.restructured)
      out << " matching=" << n.matching_size << " src_in=" << n.src_in << " src_out=" << n.src_out
          << " dst_in=" << n.dst_in << " dst_out=" << n.dst_out << " uncovered=" << n.uncovered
          << " pushes=" << n.events.pushes << " pops=" << n.events.pops << " lookups=" << n.events.lookups;
    out << (n.is_leaf() ? " leaf" : "") << '\n';
  }
}

}  // namespace hgr
