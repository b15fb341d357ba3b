#include "hgr/locality.hpp"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "hgr/errors.hpp"
#include "hgr/kernels.hpp"

namespace hgr {

namespace {

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%016" PRIx64, x);
  return buf;
}

}  // namespace

AccessTrace na_trace_baseline(const SemanticGraph& g) {
  AccessTrace t;
  t.num_src = g.num_src();
  t.num_dst = g.num_dst();
  t.fingerprint = g.fingerprint();
  t.accesses.reserve(g.num_edges() + 2 * g.num_dst());
  const auto ns = static_cast<VertexRef>(g.num_src());
  for (VertexId v = 0; v < g.num_dst(); ++v) {
    if (g.in_degree(v) == 0) continue;
    t.accesses.push_back({ns + v, AccessKind::kReadPartial, false});
    for (const VertexId u : g.in_neighbors(v)) t.accesses.push_back({u, AccessKind::kReadFeature, false});
    t.accesses.push_back({ns + v, AccessKind::kWritePartial, false});
  }
  if (!t.accesses.empty()) t.segments.push_back({0, t.accesses.size(), 0});
  return t;
}

void append_subgraph_trace(AccessTrace& trace, const SemanticGraph& sub, SubgraphKind kind,
                           std::span<const VertexId> src_map, std::span<const VertexId> dst_map) {
  const std::size_t begin = trace.accesses.size();
  const auto ns = static_cast<VertexRef>(trace.num_src);
  // The whole graph has no backbone, so nothing in it is marked stationary.
  const bool mark = kind != SubgraphKind::kWhole;
  std::size_t stationary = 0;

  if (stationary_role(kind) == Role::kSrc) {
    for (VertexId u = 0; u < sub.num_src(); ++u) stationary += sub.out_degree(u) > 0;
    for (VertexId v = 0; v < sub.num_dst(); ++v) {
      if (sub.in_degree(v) == 0) continue;
      const VertexRef dst_ref = ns + dst_map[v];
      trace.accesses.push_back({dst_ref, AccessKind::kReadPartial, false});
      for (const VertexId u : sub.in_neighbors(v))
        trace.accesses.push_back({src_map[u], AccessKind::kReadFeature, mark});
      trace.accesses.push_back({dst_ref, AccessKind::kWritePartial, false});
    }
  } else {
    for (VertexId v = 0; v < sub.num_dst(); ++v) stationary += sub.in_degree(v) > 0;
    for (VertexId u = 0; u < sub.num_src(); ++u) {
      if (sub.out_degree(u) == 0) continue;
      trace.accesses.push_back({src_map[u], AccessKind::kReadFeature, false});
      for (const VertexId v : sub.out_neighbors(u)) {
        trace.accesses.push_back({ns + dst_map[v], AccessKind::kReadPartial, mark});
        trace.accesses.push_back({ns + dst_map[v], AccessKind::kWritePartial, mark});
      }
    }
  }
  if (trace.accesses.size() > begin)
    trace.segments.push_back({begin, trace.accesses.size(), mark ? stationary : 0});
}

AccessTrace na_trace_restructured(const SemanticGraph& parent, const SubgraphTriple& t) {
  AccessTrace trace;
  trace.num_src = parent.num_src();
  trace.num_dst = parent.num_dst();
  trace.fingerprint = parent.fingerprint();
  for (const Subgraph& s : t.parts) append_subgraph_trace(trace, s.graph, s.kind, s.src_ids, s.dst_ids);
  return trace;
}

ReplacementPolicy parse_policy(const std::string& s) {
  if (s == "lru") return ReplacementPolicy::kLru;
  if (s == "fifo") return ReplacementPolicy::kFifo;
  throw ConfigError("unknown policy '" + s + "' (expected lru or fifo)");
}

const char* to_string(ReplacementPolicy p) { return p == ReplacementPolicy::kLru ? "lru" : "fifo"; }

void check_config(const BufferConfig& cfg) {
  if (cfg.capacity_vectors < 2)
    throw ConfigError("buffer capacity must be at least 2 vectors (got " + std::to_string(cfg.capacity_vectors) +
                      ")");
}

namespace {

// Fully associative buffer state. Unpinned residents sit in an ordered set
// keyed by (stamp, ref); the first element is the victim.
class Buffer {
 public:
  Buffer(std::size_t refs, const BufferConfig& cfg)
      : cfg_(cfg), stamp_(refs, kAbsent), dirty_(refs, 0), pinned_(refs, 0) {}

  // Returns true on a miss.
  bool access(VertexRef r, bool write, std::uint64_t& writebacks) {
    ++clock_;
    bool miss = false;
    if (stamp_[r] == kAbsent) {
      miss = true;
      if (resident_ == cfg_.capacity_vectors) evict_one(writebacks);
      stamp_[r] = clock_;
      ++resident_;
      if (!pinned_[r]) evictable_.insert({clock_, r});
    } else if (cfg_.policy == ReplacementPolicy::kLru) {
      if (!pinned_[r]) {
        evictable_.erase({stamp_[r], r});
        evictable_.insert({clock_, r});
      }
      stamp_[r] = clock_;
    }
    if (write) dirty_[r] = 1;
    return miss;
  }

  void pin(VertexRef r) {
    if (pinned_[r] || stamp_[r] == kAbsent) return;
    evictable_.erase({stamp_[r], r});
    pinned_[r] = 1;
    pinned_list_.push_back(r);
  }

  void unpin_all() {
    for (const VertexRef r : pinned_list_) {
      pinned_[r] = 0;
      if (stamp_[r] != kAbsent) evictable_.insert({stamp_[r], r});
    }
    pinned_list_.clear();
  }

  void flush(std::uint64_t& writebacks) {
    unpin_all();
    for (const auto& [stamp, r] : evictable_) {
      writebacks += dirty_[r];
      dirty_[r] = 0;
      stamp_[r] = kAbsent;
    }
    evictable_.clear();
    resident_ = 0;
  }

 private:
  static constexpr std::uint64_t kAbsent = std::numeric_limits<std::uint64_t>::max();

  void evict_one(std::uint64_t& writebacks) {
    // Pinning is only enabled when at least one slot stays unpinned.
    const auto victim = evictable_.begin();
    const VertexRef r = victim->second;
    evictable_.erase(victim);
    writebacks += dirty_[r];
    dirty_[r] = 0;
    stamp_[r] = kAbsent;
    --resident_;
  }

  const BufferConfig& cfg_;
  std::uint64_t clock_ = 0;
  std::size_t resident_ = 0;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint8_t> dirty_;
  std::vector<std::uint8_t> pinned_;
  std::vector<VertexRef> pinned_list_;
  std::set<std::pair<std::uint64_t, VertexRef>> evictable_;
};

}  // namespace

SimMetrics simulate_buffer(const AccessTrace& trace, const BufferConfig& cfg, std::size_t vector_bytes) {
  check_config(cfg);
  SimMetrics m;
  m.fingerprint = trace.fingerprint;
  m.vector_bytes = vector_bytes;
  m.fetches_per_vertex.assign(trace.num_refs(), 0);
  m.accesses = trace.accesses.size();

  std::vector<TraceSegment> segments = trace.segments;
  if (segments.empty() && !trace.accesses.empty()) segments.push_back({0, trace.accesses.size(), 0});

  Buffer buf(trace.num_refs(), cfg);
  std::uint64_t writebacks = 0;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const TraceSegment& seg = segments[s];
    if (cfg.isolate_segments && s > 0) buf.flush(writebacks);
    buf.unpin_all();
    const bool pin = cfg.pin_backbone && seg.stationary_count > 0 &&
                     seg.stationary_count <= cfg.capacity_vectors - 1;
    for (std::size_t i = seg.begin; i < seg.end; ++i) {
      const Access& a = trace.accesses[i];
      if (a.vertex >= trace.num_refs()) throw ContractError("trace references a vertex outside its graph");
      if (buf.access(a.vertex, a.kind == AccessKind::kWritePartial, writebacks)) ++m.fetches_per_vertex[a.vertex];
      if (pin && a.stationary) buf.pin(a.vertex);
    }
  }
  buf.flush(writebacks);

  m.replacements_per_vertex.assign(trace.num_refs(), 0);
  for (std::size_t r = 0; r < trace.num_refs(); ++r) {
    const std::uint64_t f = m.fetches_per_vertex[r];
    if (f == 0) continue;
    ++m.touched_vertices;
    m.fetches_total += f;
    m.replacements_per_vertex[r] = f - 1;
    m.replacements_total += f - 1;
  }
  m.writebacks_total = writebacks;
  m.dram_bytes = (m.fetches_total + m.writebacks_total) * vector_bytes;
  m.histogram = replacement_histogram(m);
  return m;
}

std::uint64_t oracle_min_fetches(const SubgraphTriple& t) {
  std::uint64_t n = 0;
  for (const Subgraph& s : t.parts) n += s.graph.num_src() + s.graph.num_dst();
  return n;
}

std::vector<HistogramRow> replacement_histogram(const SimMetrics& m, const std::vector<std::uint64_t>& edges) {
  if (edges.empty() || edges.front() != 0) throw ConfigError("histogram bucket edges must start at 0");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i] <= edges[i - 1]) throw ConfigError("histogram bucket edges must be strictly ascending");

  const auto bucket = kernels::omp::bucket_of(m.fetches_per_vertex, edges);
  std::vector<std::uint64_t> vertices(edges.size(), 0), fetches(edges.size(), 0);
  std::uint64_t touched = 0, total = 0;
  for (std::size_t r = 0; r < bucket.size(); ++r) {
    if (bucket[r] < 0) continue;
    ++vertices[bucket[r]];
    fetches[bucket[r]] += m.fetches_per_vertex[r];
    ++touched;
    total += m.fetches_per_vertex[r];
  }

  std::vector<HistogramRow> rows;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (vertices[i] == 0) continue;
    HistogramRow row;
    row.lower = edges[i];
    row.open_ended = i + 1 == edges.size();
    row.upper = row.open_ended ? 0 : edges[i + 1];
    row.vertices = vertices[i];
    row.fetches = fetches[i];
    row.vertex_ratio = static_cast<double>(vertices[i]) / static_cast<double>(touched);
    row.access_ratio = static_cast<double>(fetches[i]) / static_cast<double>(total);
    rows.push_back(row);
  }
  return rows;
}

double tail_vertex_mass(const std::vector<HistogramRow>& rows, std::uint64_t threshold) {
  double mass = 0.0;
  for (const auto& r : rows)
    if (r.lower >= threshold) mass += r.vertex_ratio;
  return mass;
}

Comparison compare(const SimMetrics& baseline, const SimMetrics& restructured) {
  if (baseline.fingerprint != restructured.fingerprint ||
      baseline.fetches_per_vertex.size() != restructured.fetches_per_vertex.size())
    throw ContractError("metrics come from different graphs (fingerprint " + hex64(baseline.fingerprint) +
                        " vs " + hex64(restructured.fingerprint) + ")");
  if (baseline.vector_bytes != restructured.vector_bytes)
    throw ContractError("metrics use different vector sizes");

  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    if (den == 0) return num == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
  };
  Comparison c;
  c.dram_access_ratio = ratio(restructured.fetches_total, baseline.fetches_total);
  c.dram_bytes_ratio = ratio(restructured.dram_bytes, baseline.dram_bytes);
  c.fetch_delta = static_cast<std::int64_t>(restructured.fetches_total) - static_cast<std::int64_t>(baseline.fetches_total);
  c.replacement_delta = static_cast<std::int64_t>(restructured.replacements_total) -
                        static_cast<std::int64_t>(baseline.replacements_total);
  for (std::size_t r = 0; r < baseline.fetches_per_vertex.size(); ++r) {
    const auto b = baseline.fetches_per_vertex[r];
    const auto x = restructured.fetches_per_vertex[r];
    c.vertices_improved += x < b;
    c.vertices_worsened += x > b;
  }
  c.baseline_histogram = baseline.histogram;
  c.restructured_histogram = restructured.histogram;
  return c;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "text") return ReportFormat::kText;
  if (s == "csv") return ReportFormat::kCsv;
  throw ConfigError("unknown format '" + s + "' (expected text or csv)");
}

namespace {

std::string upper_label(const HistogramRow& row) { return row.open_ended ? "inf" : std::to_string(row.upper); }

void write_histogram_text(std::ostream& out, const char* key, const std::vector<HistogramRow>& rows) {
  for (const auto& row : rows)
    out << key << " = " << row.lower << ' ' << upper_label(row) << ' ' << row.vertices << ' ' << row.fetches << ' '
        << fixed6(row.vertex_ratio) << ' ' << fixed6(row.access_ratio) << '\n';
}

void write_histogram_csv(std::ostream& out, const char* series, const std::vector<HistogramRow>& rows) {
  for (const auto& row : rows)
    out << series << ',' << row.lower << ',' << upper_label(row) << ',' << row.vertices << ',' << row.fetches << ','
        << fixed6(row.vertex_ratio) << ',' << fixed6(row.access_ratio) << '\n';
}

}  // namespace

void write_metrics(std::ostream& out, const SimMetrics& m, ReportFormat fmt) {
  const std::pair<const char*, std::string> fields[] = {
      {"fingerprint", hex64(m.fingerprint)},
      {"num_refs", std::to_string(m.fetches_per_vertex.size())},
      {"vector_bytes", std::to_string(m.vector_bytes)},
      {"accesses", std::to_string(m.accesses)},
      {"touched_vertices", std::to_string(m.touched_vertices)},
      {"fetches_total", std::to_string(m.fetches_total)},
      {"replacements_total", std::to_string(m.replacements_total)},
      {"writebacks_total", std::to_string(m.writebacks_total)},
      {"dram_bytes", std::to_string(m.dram_bytes)},
  };
  if (fmt == ReportFormat::kCsv) {
    out << "field,value\n";
    for (const auto& [k, v] : fields) out << k << ',' << v << '\n';
    out << "series,bucket_lower,bucket_upper,vertices,fetches,vertex_ratio,access_ratio\n";
    write_histogram_csv(out, "histogram", m.histogram);
    return;
  }
  for (const auto& [k, v] : fields) out << k << " = " << v << '\n';
  out << "# histogram = lower upper vertices fetches vertex_ratio access_ratio\n";
  write_histogram_text(out, "histogram", m.histogram);
  out << "# vertex = ref fetches (touched vertices only)\n";
  for (std::size_t r = 0; r < m.fetches_per_vertex.size(); ++r)
    if (m.fetches_per_vertex[r] > 0) out << "vertex = " << r << ' ' << m.fetches_per_vertex[r] << '\n';
}

SimMetrics parse_metrics(std::istream& in) {
  SimMetrics m;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_vertex;
  std::size_t num_refs = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key = line.substr(0, eq);
    std::istringstream v(line.substr(eq + 3));
    bool ok = true;
    if (key == "fingerprint") {
      std::string hex;
      ok = static_cast<bool>(v >> hex);
      if (ok) {
        try {
          m.fingerprint = std::stoull(hex, nullptr, 16);
        } catch (const std::exception&) {
          ok = false;
        }
      }
    } else if (key == "vector_bytes") {
      ok = static_cast<bool>(v >> m.vector_bytes);
    } else if (key == "accesses") {
      ok = static_cast<bool>(v >> m.accesses);
    } else if (key == "touched_vertices") {
      ok = static_cast<bool>(v >> m.touched_vertices);
    } else if (key == "fetches_total") {
      ok = static_cast<bool>(v >> m.fetches_total);
    } else if (key == "replacements_total") {
      ok = static_cast<bool>(v >> m.replacements_total);
    } else if (key == "writebacks_total") {
      ok = static_cast<bool>(v >> m.writebacks_total);
    } else if (key == "dram_bytes") {
      ok = static_cast<bool>(v >> m.dram_bytes);
    } else if (key == "num_refs") {
      ok = static_cast<bool>(v >> num_refs);
    } else if (key == "histogram") {
      continue;  // recomputed from per-vertex counts
    } else if (key == "vertex") {
      std::uint64_t r = 0, f = 0;
      ok = static_cast<bool>(v >> r >> f);
      per_vertex.emplace_back(r, f);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
    if (!ok) throw ParseError("bad value for '" + key + "'", lineno);
  }
  for (const auto& [r, f] : per_vertex) num_refs = std::max<std::size_t>(num_refs, r + 1);
  m.fetches_per_vertex.assign(num_refs, 0);
  m.replacements_per_vertex.assign(num_refs, 0);
  for (const auto& [r, f] : per_vertex) {
    m.fetches_per_vertex[r] = f;
    m.replacements_per_vertex[r] = f ? f - 1 : 0;
  }
  m.histogram = replacement_histogram(m);
  return m;
}

void write_comparison(std::ostream& out, const Comparison& c, ReportFormat fmt) {
  const std::pair<const char*, std::string> fields[] = {
      {"dram_access_ratio", fixed6(c.dram_access_ratio)},
      {"dram_bytes_ratio", fixed6(c.dram_bytes_ratio)},
      {"fetch_delta", std::to_string(c.fetch_delta)},
      {"replacement_delta", std::to_string(c.replacement_delta)},
      {"vertices_improved", std::to_string(c.vertices_improved)},
      {"vertices_worsened", std::to_string(c.vertices_worsened)},
  };
  if (fmt == ReportFormat::kCsv) {
    out << "field,value\n";
    for (const auto& [k, v] : fields) out << k << ',' << v << '\n';
    out << "series,bucket_lower,bucket_upper,vertices,fetches,vertex_ratio,access_ratio\n";
    write_histogram_csv(out, "baseline", c.baseline_histogram);
    write_histogram_csv(out, "restructured", c.restructured_histogram);
    return;
  }
  for (const auto& [k, v] : fields) out << k << " = " << v << '\n';
  write_histogram_text(out, "baseline_histogram", c.baseline_histogram);
  write_histogram_text(out, "restructured_histogram", c.restructured_histogram);
}

}  // namespace hgr
