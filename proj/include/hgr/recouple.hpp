#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgr/graph.hpp"
#include "hgr/matching.hpp"

namespace hgr {

enum class RecoupleMode { kKonig, kPaperLiteral };

RecoupleMode parse_mode(const std::string& s);
const char* to_string(RecoupleMode mode);

// Four-way vertex classification. Membership flags make each role's in/out
// classes disjoint and covering by construction; the backbone is src_in + dst_in.
struct Partition {
  std::vector<std::uint8_t> src_in;  // 1 = backbone source
  std::vector<std::uint8_t> dst_in;  // 1 = backbone destination
  RecoupleMode mode = RecoupleMode::kKonig;

  std::vector<VertexId> src_in_ids() const;
  std::vector<VertexId> src_out_ids() const;
  std::vector<VertexId> dst_in_ids() const;
  std::vector<VertexId> dst_out_ids() const;
  std::size_t src_in_count() const;
  std::size_t dst_in_count() const;
  std::size_t backbone_size() const { return src_in_count() + dst_in_count(); }

  friend bool operator==(const Partition&, const Partition&) = default;
};

// König construction: Z = vertices reachable from unmatched sources along
// alternating paths (unmatched edges src->dst, matched edges dst->src).
// Backbone = (sources not in Z) + (destinations in Z), a minimum vertex cover.
// Throws ContractError if m is not a maximum matching of g.
Partition select_backbone_konig(const SemanticGraph& g, const Matching& m);

// Classification loop as printed in the recoupling pseudocode: matched sources
// with an unmatched destination neighbor enter src_in (those neighbors go to
// dst_out), then the mirror image for matched destinations, and every
// remaining vertex falls to the out class of its role. Not guaranteed to be a
// vertex cover; see verify_cover.
Partition select_backbone_paper(const SemanticGraph& g, const Matching& m);

Partition select_backbone(const SemanticGraph& g, const Matching& m, RecoupleMode mode);

// Edges with src in src_out and dst in dst_out. Zero certifies the cover.
std::size_t verify_cover(const SemanticGraph& g, const Partition& p);

enum class SubgraphKind : std::uint8_t {
  kOutIn = 0,  // g1: src_out x dst_in, destination side stationary
  kInIn = 1,   // g2: src_in x dst_in, source side stationary
  kInOut = 2,  // g3: src_in x dst_out, source side stationary
  kWhole = 3   // unrestructured graph (recursion depth 0)
};

const char* to_string(SubgraphKind kind);

enum class Role : std::uint8_t { kSrc, kDst };

Role stationary_role(SubgraphKind kind);

// A subgraph with compact local ids. src_ids[local] / dst_ids[local] give the
// id in the parent graph; both tables are ascending.
struct Subgraph {
  SubgraphKind kind = SubgraphKind::kWhole;
  SemanticGraph graph;
  std::vector<VertexId> src_ids;
  std::vector<VertexId> dst_ids;

  std::size_t stationary_size() const {
    return stationary_role(kind) == Role::kSrc ? graph.num_src() : graph.num_dst();
  }
};

struct SubgraphTriple {
  std::array<Subgraph, 3> parts;  // g1, g2, g3
  RecoupleMode mode = RecoupleMode::kKonig;
  // Paper-literal mode only: src_out x dst_out edges routed into g2.
  std::size_t uncovered_routed = 0;

  const Subgraph& g1() const { return parts[0]; }
  const Subgraph& g2() const { return parts[1]; }
  const Subgraph& g3() const { return parts[2]; }
  std::size_t total_edges() const;
};

// Assigns every parent edge to exactly one subgraph. Throws ContractError for
// a König-mode partition that leaves an edge uncovered.
SubgraphTriple generate_subgraphs(const SemanticGraph& g, const Partition& p);

// Decouple + recouple in one call.
struct Restructured {
  Matching matching;
  DecoupleEvents events;
  Partition partition;
  SubgraphTriple triple;
  std::size_t uncovered = 0;
};
Restructured restructure(const SemanticGraph& g, RecoupleMode mode = RecoupleMode::kKonig);

void write_partition(std::ostream& out, const Partition& p);
// Remap tables for one subgraph: "src <local> <parent>" and "dst <local> <parent>" lines.
void write_remap(std::ostream& out, const Subgraph& s);

}  // namespace hgr
