#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hgr {

// Role-local vertex index. Source ids and destination ids are separate namespaces.
using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Relation {
  std::string src_type;
  std::string dst_type;
  std::string name;  // e.g. "A->M"

  friend bool operator==(const Relation&, const Relation&) = default;
};

inline constexpr std::size_t kDefaultFeatureDim = 64;
inline constexpr std::size_t kBytesPerElement = 4;

// Metadata that travels beside an edge-list file.
struct GraphMeta {
  std::size_t num_src = 0;
  std::size_t num_dst = 0;
  Relation relation;
  std::size_t feature_dim_src = kDefaultFeatureDim;
  std::size_t feature_dim_dst = kDefaultFeatureDim;
};

// Directed bipartite graph for a single relation. Immutable after construction;
// edges are deduplicated, sorted by (src, dst), and mirrored in two CSR arrays.
class SemanticGraph {
 public:
  SemanticGraph() = default;

  // Throws ParseError if an endpoint is out of range. Duplicates are dropped.
  static SemanticGraph from_edges(std::size_t num_src, std::size_t num_dst,
                                  std::vector<Edge> edges, Relation relation = {},
                                  std::size_t feature_bytes_src = kDefaultFeatureDim * kBytesPerElement,
                                  std::size_t feature_bytes_dst = kDefaultFeatureDim * kBytesPerElement);

  std::size_t num_src() const { return num_src_; }
  std::size_t num_dst() const { return num_dst_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_vertices() const { return num_src_ + num_dst_; }
  bool empty() const { return edges_.empty(); }

  std::span<const Edge> edges() const { return edges_; }
  // Destinations of source u, ascending.
  std::span<const VertexId> out_neighbors(VertexId u) const {
    return {fwd_targets_.data() + fwd_offsets_[u], fwd_targets_.data() + fwd_offsets_[u + 1]};
  }
  // Sources of destination v, ascending.
  std::span<const VertexId> in_neighbors(VertexId v) const {
    return {rev_targets_.data() + rev_offsets_[v], rev_targets_.data() + rev_offsets_[v + 1]};
  }
  std::size_t out_degree(VertexId u) const { return fwd_offsets_[u + 1] - fwd_offsets_[u]; }
  std::size_t in_degree(VertexId v) const { return rev_offsets_[v + 1] - rev_offsets_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  std::span<const std::size_t> fwd_offsets() const { return fwd_offsets_; }
  std::span<const VertexId> fwd_targets() const { return fwd_targets_; }
  std::span<const std::size_t> rev_offsets() const { return rev_offsets_; }
  std::span<const VertexId> rev_targets() const { return rev_targets_; }

  const Relation& relation() const { return relation_; }
  std::size_t feature_bytes_src() const { return feature_bytes_src_; }
  std::size_t feature_bytes_dst() const { return feature_bytes_dst_; }
  // Number of duplicate input edges dropped at construction.
  std::size_t dropped_duplicates() const { return dropped_duplicates_; }

  // FNV-1a over dimensions and sorted edges. Identifies the topology in reports.
  std::uint64_t fingerprint() const;

  GraphMeta meta() const;

 private:
  std::size_t num_src_ = 0;
  std::size_t num_dst_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> fwd_offsets_{0};
  std::vector<VertexId> fwd_targets_;
  std::vector<std::size_t> rev_offsets_{0};
  std::vector<VertexId> rev_targets_;
  Relation relation_;
  std::size_t feature_bytes_src_ = kDefaultFeatureDim * kBytesPerElement;
  std::size_t feature_bytes_dst_ = kDefaultFeatureDim * kBytesPerElement;
  std::size_t dropped_duplicates_ = 0;
};

// Heterogeneous graph: typed vertex sets and one edge list per relation.
struct HetGraph {
  std::map<std::string, std::size_t> vertex_types;
  std::vector<Relation> relations;
  std::vector<std::vector<Edge>> relation_edges;  // parallel to relations

  // |vertex types| + |edge types| > 2. Homogeneous inputs are accepted but flagged.
  bool is_heterogeneous() const { return vertex_types.size() + relations.size() > 2; }
  std::size_t total_edges() const;
};

// ---- ingestion / serialization ----

struct LoadResult {
  SemanticGraph graph;
  std::size_t duplicates = 0;
};

// Reads "src dst" pairs, one per line; '#' starts a comment. Ids are checked
// against meta.num_src / meta.num_dst and errors carry the line number.
LoadResult load_edge_list(std::istream& in, const GraphMeta& meta);
LoadResult load_edge_list_file(const std::string& path, const GraphMeta& meta);

void write_edge_list(std::ostream& out, const SemanticGraph& g);

// key = value text; unknown keys are rejected.
GraphMeta parse_meta(std::istream& in);
GraphMeta load_meta_file(const std::string& path);
void write_meta(std::ostream& out, const GraphMeta& meta);

// One semantic graph per relation in declaration order. Same-typed relations
// (P->P) get independent source and destination namespaces of equal size.
std::vector<SemanticGraph> build_semantic_graphs(const HetGraph& het,
                                                 std::size_t feature_dim = kDefaultFeatureDim);

// ---- synthetic generation ----

enum class GeneratorKind { kUniform, kPowerLaw };

struct GeneratorParams {
  GeneratorKind kind = GeneratorKind::kUniform;
  std::size_t num_src = 0;
  std::size_t num_dst = 0;
  std::size_t num_edges = 0;
  std::uint64_t seed = 0;
  double exponent = 1.5;  // Zipf skew of destination endpoints (power-law only)
  std::size_t feature_dim = kDefaultFeatureDim;
};

SemanticGraph gen_synthetic(const GeneratorParams& params);

GeneratorKind parse_generator_kind(const std::string& s);
const char* to_string(GeneratorKind kind);

// ---- validation ----

struct ValidationReport {
  std::size_t duplicate_edges = 0;
  std::size_t isolated_src = 0;
  std::size_t isolated_dst = 0;
  std::size_t min_src_degree = 0;
  std::size_t max_src_degree = 0;
  std::size_t min_dst_degree = 0;
  std::size_t max_dst_degree = 0;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate(const SemanticGraph& g);
void write_validation(std::ostream& out, const ValidationReport& r);

}  // namespace hgr
