#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgr/graph.hpp"
#include "hgr/locality.hpp"
#include "hgr/matching.hpp"
#include "hgr/recouple.hpp"

namespace hgr {

struct RestructureConfig {
  std::size_t max_depth = 2;
  double fit_fraction = 0.5;  // stop recursing once stationary side <= fit_fraction * capacity
  RecoupleMode mode = RecoupleMode::kKonig;
};

void check_config(const RestructureConfig& cfg);

// One node of the restructuring tree. Ids in src_ids/dst_ids refer to the root graph.
struct PlanNode {
  std::string lineage;  // "root", "g1", "g2.g3", ...
  std::size_t depth = 0;
  SubgraphKind kind = SubgraphKind::kWhole;
  SemanticGraph graph;
  std::vector<VertexId> src_ids;
  std::vector<VertexId> dst_ids;
  bool restructured = false;  // decoupled + recoupled; children are non-empty subgraphs
  DecoupleEvents events;
  std::size_t matching_size = 0;
  std::size_t src_in = 0, src_out = 0, dst_in = 0, dst_out = 0;
  std::size_t uncovered = 0;
  std::vector<std::size_t> children;  // indices into RestructurePlan::nodes, g1/g2/g3 order

  bool is_leaf() const { return children.empty(); }
  std::size_t stationary_size() const {
    return stationary_role(kind) == Role::kSrc ? graph.num_src() : graph.num_dst();
  }
};

struct RestructurePlan {
  std::size_t root_src = 0;
  std::size_t root_dst = 0;
  std::uint64_t fingerprint = 0;
  RestructureConfig config;
  std::size_t capacity = 0;
  std::vector<PlanNode> nodes;  // nodes[0] is the root, pre-order

  DecoupleEvents total_events() const;
};

// Decouple + recouple the root, then recurse into each child whose stationary
// side exceeds fit_fraction * buffer_capacity while depth < max_depth.
RestructurePlan restructure_recursive(const SemanticGraph& g, const RestructureConfig& cfg,
                                      std::size_t buffer_capacity);

// Leaf node indices: g1, g2, g3 within every node, children expanded in place.
std::vector<std::size_t> emission_order(const RestructurePlan& plan);

// Root-namespace trace over the plan's leaves in emission order.
AccessTrace na_trace_plan(const RestructurePlan& plan);

// Sum over leaves of the distinct vertices each leaf touches.
std::uint64_t oracle_min_fetches(const RestructurePlan& plan);

struct CycleWeights {
  std::uint64_t push = 1;
  std::uint64_t pop = 1;
  std::uint64_t lookup = 1;
};

std::uint64_t frontend_cycles(const DecoupleEvents& ev, const CycleWeights& w = {});

// Two-stage frontend/backend pipeline over semantic graphs processed in order:
// f1 + sum_i max(f_{i+1}, b_i) + b_n. Throws ConfigError on length mismatch.
std::uint64_t pipeline_model(const std::vector<std::uint64_t>& frontend,
                             const std::vector<std::uint64_t>& backend);

void write_plan(std::ostream& out, const RestructurePlan& plan);

}  // namespace hgr
