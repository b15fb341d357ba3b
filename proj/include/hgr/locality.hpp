#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hgr/graph.hpp"
#include "hgr/recouple.hpp"

namespace hgr {

enum class AccessKind : std::uint8_t { kReadFeature, kReadPartial, kWritePartial };

// Sources occupy [0, num_src) of the unified namespace, destinations follow.
using VertexRef = std::uint32_t;

struct Access {
  VertexRef vertex = 0;
  AccessKind kind = AccessKind::kReadFeature;
  bool stationary = false;  // vertex belongs to the current segment's stationary side

  friend bool operator==(const Access&, const Access&) = default;
};

// A contiguous run of accesses produced from one subgraph.
struct TraceSegment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t stationary_count = 0;  // distinct stationary vertices in the segment

  friend bool operator==(const TraceSegment&, const TraceSegment&) = default;
};

struct AccessTrace {
  std::size_t num_src = 0;
  std::size_t num_dst = 0;
  std::uint64_t fingerprint = 0;  // of the graph the trace was built from
  std::vector<Access> accesses;
  std::vector<TraceSegment> segments;

  std::size_t num_refs() const { return num_src + num_dst; }
};

// Destination-major pull sweep over the whole graph: for each destination v,
// read-partial(v), read-feature(u) for u in N(v), write-partial(v).
AccessTrace na_trace_baseline(const SemanticGraph& g);

// Appends one subgraph's accesses as a new segment. The streamed side is the
// outer loop and each streamed vertex is touched in one contiguous burst, so
// the stationary side is revisited from the buffer:
//   source-stationary (g2, g3, whole): per destination, read-partial, features, write-partial
//   destination-stationary (g1):       per source, read-feature, then partial read/write per neighbor
// src_map/dst_map translate local ids to ids of the trace's graph.
void append_subgraph_trace(AccessTrace& trace, const SemanticGraph& sub, SubgraphKind kind,
                           std::span<const VertexId> src_map, std::span<const VertexId> dst_map);

// g1, g2, g3 in that order; empty subgraphs contribute no segment.
AccessTrace na_trace_restructured(const SemanticGraph& parent, const SubgraphTriple& t);

enum class ReplacementPolicy { kLru, kFifo };

ReplacementPolicy parse_policy(const std::string& s);
const char* to_string(ReplacementPolicy p);

struct BufferConfig {
  std::size_t capacity_vectors = 0;
  ReplacementPolicy policy = ReplacementPolicy::kLru;
  // Keep the current segment's stationary side resident when it fits in
  // capacity - 1 slots; otherwise that segment runs unpinned.
  bool pin_backbone = false;
  // Write back and invalidate the buffer at every segment boundary, so each
  // subgraph starts cold. When false, residency carries across subgraphs.
  bool isolate_segments = true;
};

// A 14.52 MB aggregation buffer over 64-dim fp32 vectors.
inline constexpr std::size_t kDefaultCapacityVectors = 14520000 / (kDefaultFeatureDim * kBytesPerElement);

void check_config(const BufferConfig& cfg);

struct HistogramRow {
  std::uint64_t lower = 0;   // bucket covers [lower, upper)
  std::uint64_t upper = 0;   // 0 when open-ended
  bool open_ended = false;
  std::uint64_t vertices = 0;
  std::uint64_t fetches = 0;
  double vertex_ratio = 0.0;
  double access_ratio = 0.0;
};

inline const std::vector<std::uint64_t> kDefaultBucketEdges = {0, 1, 2, 4, 8, 16};

struct SimMetrics {
  std::uint64_t fingerprint = 0;
  std::size_t vector_bytes = 0;
  std::vector<std::uint64_t> fetches_per_vertex;
  std::vector<std::uint64_t> replacements_per_vertex;
  std::uint64_t accesses = 0;
  std::uint64_t touched_vertices = 0;
  std::uint64_t fetches_total = 0;
  std::uint64_t replacements_total = 0;
  std::uint64_t writebacks_total = 0;
  std::uint64_t dram_bytes = 0;
  std::vector<HistogramRow> histogram;  // over kDefaultBucketEdges
};

// Fully associative buffer over the unified namespace. Hit: no traffic. Miss:
// one fetch, writes included (partials are read-modify-write). Evicting a
// dirty partial costs one write-back; dirty lines left at the end are written
// back too. Victims are the oldest by policy stamp, ties to the lowest ref.
SimMetrics simulate_buffer(const AccessTrace& trace, const BufferConfig& cfg, std::size_t vector_bytes);

// Sum over subgraphs of the distinct vertices each one touches.
std::uint64_t oracle_min_fetches(const SubgraphTriple& t);

// Buckets touched vertices by replacement count. bucket_edges are ascending
// lower bounds starting at 0; the last bucket is open-ended. Only non-empty
// buckets are emitted.
std::vector<HistogramRow> replacement_histogram(const SimMetrics& m,
                                                const std::vector<std::uint64_t>& bucket_edges = kDefaultBucketEdges);

// Histogram mass (vertex ratio) in buckets whose lower edge is >= threshold.
double tail_vertex_mass(const std::vector<HistogramRow>& rows, std::uint64_t threshold);

struct Comparison {
  double dram_access_ratio = 1.0;  // restructured fetches / baseline fetches
  double dram_bytes_ratio = 1.0;
  std::int64_t fetch_delta = 0;        // restructured - baseline
  std::int64_t replacement_delta = 0;  // restructured - baseline
  std::uint64_t vertices_improved = 0;
  std::uint64_t vertices_worsened = 0;
  std::vector<HistogramRow> baseline_histogram;
  std::vector<HistogramRow> restructured_histogram;
};

// Throws ContractError when the two metrics come from different graphs.
Comparison compare(const SimMetrics& baseline, const SimMetrics& restructured);

enum class ReportFormat { kText, kCsv };
ReportFormat parse_format(const std::string& s);

void write_metrics(std::ostream& out, const SimMetrics& m, ReportFormat fmt = ReportFormat::kText);
// Reads the text form back (totals, per-vertex fetches and histogram).
SimMetrics parse_metrics(std::istream& in);
void write_comparison(std::ostream& out, const Comparison& c, ReportFormat fmt = ReportFormat::kText);

}  // namespace hgr
