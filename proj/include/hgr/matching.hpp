#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hgr/graph.hpp"

namespace hgr {

// Maximum-cardinality matching stored as two partner maps. kNoVertex marks an
// unmatched vertex. src_partner[u] == v  <=>  dst_partner[v] == u.
struct Matching {
  std::vector<VertexId> src_partner;
  std::vector<VertexId> dst_partner;
  std::size_t size = 0;

  bool src_matched(VertexId u) const { return src_partner[u] != kNoVertex; }
  bool dst_matched(VertexId v) const { return dst_partner[v] != kNoVertex; }

  friend bool operator==(const Matching&, const Matching&) = default;
};

// Queue and table operations performed by the augmenting search, in the terms of
// the decoupler hardware: one push per (source, destination) probe recorded in
// that destination's waiting FIFO, one pop per source that gives up its old
// partner while an augmenting path is applied, one lookup per neighbor scanned.
struct DecoupleEvents {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t lookups = 0;

  friend bool operator==(const DecoupleEvents&, const DecoupleEvents&) = default;
};

struct DecoupleResult {
  Matching matching;
  DecoupleEvents events;
};

// Breadth-first augmenting search seeded from each unmatched source in ascending
// id order; neighbors are scanned ascending and the first free destination ends
// the search. The output is deterministic for a given graph.
DecoupleResult decouple(const SemanticGraph& g);
Matching max_matching(const SemanticGraph& g);
DecoupleEvents decoupler_event_counts(const SemanticGraph& g);

// Exhaustive oracle over vertex-disjoint edge subsets.
inline constexpr std::size_t kBruteForceEdgeLimit = 24;
// Throws ConfigError when g has more than kBruteForceEdgeLimit edges.
std::size_t brute_force_matching_size(const SemanticGraph& g);

// Throws ContractError unless m is a well-formed matching of g (sizes,
// involution, edge membership, cardinality field).
void check_matching(const SemanticGraph& g, const Matching& m);

void write_matching(std::ostream& out, const Matching& m);
Matching parse_matching(std::istream& in, std::size_t num_src, std::size_t num_dst);

}  // namespace hgr
