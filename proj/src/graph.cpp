#include "hgr/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <string_view>
#include <unordered_set>

#include "hgr/errors.hpp"
#include "hgr/kernels.hpp"

namespace hgr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

bool parse_unsigned(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

// Distribution mapping is done here rather than with <random> distributions so
// that generated graphs are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<Edge> sample_without_replacement(Rng& rng, std::size_t num_src, std::size_t num_dst,
                                             std::size_t k, const std::unordered_set<std::uint64_t>& taken) {
  // Partial Fisher-Yates over the pairs not yet taken, in ascending key order.
  std::vector<std::uint64_t> pool;
  const std::uint64_t total = static_cast<std::uint64_t>(num_src) * num_dst;
  pool.reserve(total - taken.size());
  for (std::uint64_t key = 0; key < total; ++key)
    if (!taken.contains(key)) pool.push_back(key);
  std::vector<Edge> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back({static_cast<VertexId>(pool[i] / num_dst), static_cast<VertexId>(pool[i] % num_dst)});
  }
  return out;
}

void put_u64(std::uint64_t& h, std::uint64_t x, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ull;
  }
}

}  // namespace

SemanticGraph SemanticGraph::from_edges(std::size_t num_src, std::size_t num_dst, std::vector<Edge> edges,
                                        Relation relation, std::size_t feature_bytes_src,
                                        std::size_t feature_bytes_dst) {
  if (num_src >= kNoVertex || num_dst >= kNoVertex)
    throw ConfigError("vertex count exceeds 32-bit id range");
  for (const Edge& e : edges) {
    if (e.src >= num_src)
      throw ParseError("source id " + std::to_string(e.src) + " out of range (num_src=" +
                       std::to_string(num_src) + ")");
    if (e.dst >= num_dst)
      throw ParseError("destination id " + std::to_string(e.dst) + " out of range (num_dst=" +
                       std::to_string(num_dst) + ")");
  }

  SemanticGraph g;
  g.num_src_ = num_src;
  g.num_dst_ = num_dst;
  g.relation_ = std::move(relation);
  g.feature_bytes_src_ = feature_bytes_src;
  g.feature_bytes_dst_ = feature_bytes_dst;

  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  g.dropped_duplicates_ = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  g.edges_ = std::move(edges);

  g.fwd_offsets_.assign(num_src + 1, 0);
  g.rev_offsets_.assign(num_dst + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.fwd_offsets_[e.src + 1];
    ++g.rev_offsets_[e.dst + 1];
  }
  std::partial_sum(g.fwd_offsets_.begin(), g.fwd_offsets_.end(), g.fwd_offsets_.begin());
  std::partial_sum(g.rev_offsets_.begin(), g.rev_offsets_.end(), g.rev_offsets_.begin());

  // Edges are sorted by (src, dst): the forward targets come out sorted, and a
  // stable scatter into destination buckets keeps the reverse lists sorted.
  g.fwd_targets_.resize(g.edges_.size());
  g.rev_targets_.resize(g.edges_.size());
  std::vector<std::size_t> cursor(g.rev_offsets_.begin(), g.rev_offsets_.end() - 1);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    g.fwd_targets_[i] = e.dst;
    g.rev_targets_[cursor[e.dst]++] = e.src;
  }
  return g;
}

bool SemanticGraph::has_edge(VertexId u, VertexId v) const {
  if (u >= num_src_ || v >= num_dst_) return false;
  const auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::uint64_t SemanticGraph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  put_u64(h, num_src_, 8);
  put_u64(h, num_dst_, 8);
  for (const Edge& e : edges_) {
    put_u64(h, e.src, 4);
    put_u64(h, e.dst, 4);
  }
  return h;
}

GraphMeta SemanticGraph::meta() const {
  GraphMeta m;
  m.num_src = num_src_;
  m.num_dst = num_dst_;
  m.relation = relation_;
  m.feature_dim_src = feature_bytes_src_ / kBytesPerElement;
  m.feature_dim_dst = feature_bytes_dst_ / kBytesPerElement;
  return m;
}

std::size_t HetGraph::total_edges() const {
  std::size_t n = 0;
  for (const auto& es : relation_edges) n += es.size();
  return n;
}

LoadResult load_edge_list(std::istream& in, const GraphMeta& meta) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;

    std::uint64_t ids[2];
    std::size_t ntok = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      const auto stop = std::min(body.find_first_of(" \t", start), body.size());
      const std::string_view tok = body.substr(start, stop - start);
      if (ntok == 2) throw ParseError("expected two ids, found more", lineno);
      if (!parse_unsigned(tok, ids[ntok]))
        throw ParseError("not a non-negative integer: '" + std::string(tok) + "'", lineno);
      ++ntok;
      pos = stop;
    }
    if (ntok != 2) throw ParseError("expected two ids", lineno);
    if (ids[0] >= meta.num_src)
      throw ParseError("source id " + std::to_string(ids[0]) + " out of range (num_src=" +
                           std::to_string(meta.num_src) + ")",
                       lineno);
    if (ids[1] >= meta.num_dst)
      throw ParseError("destination id " + std::to_string(ids[1]) + " out of range (num_dst=" +
                           std::to_string(meta.num_dst) + ")",
                       lineno);
    edges.push_back({static_cast<VertexId>(ids[0]), static_cast<VertexId>(ids[1])});
  }

  LoadResult r;
  r.graph = SemanticGraph::from_edges(meta.num_src, meta.num_dst, std::move(edges), meta.relation,
                                      meta.feature_dim_src * kBytesPerElement,
                                      meta.feature_dim_dst * kBytesPerElement);
  r.duplicates = r.graph.dropped_duplicates();
  return r;
}

LoadResult load_edge_list_file(const std::string& path, const GraphMeta& meta) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list '" + path + "'");
  try {
    return load_edge_list(in, meta);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const SemanticGraph& g) {
  for (const Edge& e : g.edges()) out << e.src << ' ' << e.dst << '\n';
}

GraphMeta parse_meta(std::istream& in) {
  GraphMeta m;
  bool have_src = false, have_dst = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));

    auto number = [&]() {
      std::uint64_t x = 0;
      if (!parse_unsigned(value, x)) throw ParseError("'" + key + "' needs a non-negative integer", lineno);
      return static_cast<std::size_t>(x);
    };
    if (key == "num_src") {
      m.num_src = number();
      have_src = true;
    } else if (key == "num_dst") {
      m.num_dst = number();
      have_dst = true;
    } else if (key == "relation") {
      m.relation.name = value;
    } else if (key == "src_type") {
      m.relation.src_type = value;
    } else if (key == "dst_type") {
      m.relation.dst_type = value;
    } else if (key == "feature_dim") {
      m.feature_dim_src = m.feature_dim_dst = number();
    } else if (key == "feature_dim_src") {
      m.feature_dim_src = number();
    } else if (key == "feature_dim_dst") {
      m.feature_dim_dst = number();
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  if (!have_src || !have_dst) throw ParseError("metadata must declare num_src and num_dst");
  return m;
}

GraphMeta load_meta_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open metadata '" + path + "'");
  try {
    return parse_meta(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_meta(std::ostream& out, const GraphMeta& m) {
  out << "num_src = " << m.num_src << '\n'
      << "num_dst = " << m.num_dst << '\n'
      << "relation = " << m.relation.name << '\n'
      << "src_type = " << m.relation.src_type << '\n'
      << "dst_type = " << m.relation.dst_type << '\n'
      << "feature_dim_src = " << m.feature_dim_src << '\n'
      << "feature_dim_dst = " << m.feature_dim_dst << '\n';
}

std::vector<SemanticGraph> build_semantic_graphs(const HetGraph& het, std::size_t feature_dim) {
  if (het.relation_edges.size() != het.relations.size())
    throw SchemaError("relation edge lists do not match declared relations");
  for (const Relation& r : het.relations) {
    if (!het.vertex_types.contains(r.src_type))
      throw SchemaError("relation '" + r.name + "' uses unknown vertex type '" + r.src_type + "'");
    if (!het.vertex_types.contains(r.dst_type))
      throw SchemaError("relation '" + r.name + "' uses unknown vertex type '" + r.dst_type + "'");
  }

  const std::size_t n = het.relations.size();
  std::vector<SemanticGraph> out(n);
  std::vector<std::string> errors(n);
  const std::size_t bytes = feature_dim * kBytesPerElement;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    Relation r = het.relations[i];
    if (r.name.empty()) r.name = r.src_type + "->" + r.dst_type;
    try {
      out[i] = SemanticGraph::from_edges(het.vertex_types.at(r.src_type), het.vertex_types.at(r.dst_type),
                                         het.relation_edges[i], r, bytes, bytes);
    } catch (const std::exception& e) {
      errors[i] = "relation '" + r.name + "': " + e.what();
    }
  }
  for (const auto& err : errors)
    if (!err.empty()) throw ParseError(err);
  return out;
}

GeneratorKind parse_generator_kind(const std::string& s) {
  if (s == "uniform" || s == "uniform-random") return GeneratorKind::kUniform;
  if (s == "power-law" || s == "powerlaw") return GeneratorKind::kPowerLaw;
  throw ConfigError("unknown generator kind '" + s + "' (expected uniform or power-law)");
}

const char* to_string(GeneratorKind kind) {
  return kind == GeneratorKind::kUniform ? "uniform" : "power-law";
}

SemanticGraph gen_synthetic(const GeneratorParams& p) {
  const std::uint64_t total = static_cast<std::uint64_t>(p.num_src) * p.num_dst;
  if (p.num_edges > total)
    throw ConfigError("cannot place " + std::to_string(p.num_edges) + " distinct edges in a " +
                      std::to_string(p.num_src) + "x" + std::to_string(p.num_dst) + " bipartite graph");
  if (p.kind == GeneratorKind::kPowerLaw && !(p.exponent > 0.0))
    throw ConfigError("power-law exponent must be positive");

  Rng rng(p.seed);
  std::vector<Edge> edges;
  edges.reserve(p.num_edges);
  std::unordered_set<std::uint64_t> taken;

  if (p.kind == GeneratorKind::kUniform && p.num_edges * 2 > total) {
    edges = sample_without_replacement(rng, p.num_src, p.num_dst, p.num_edges, taken);
  } else if (p.num_edges > 0) {
    // Destination rank r (= id) has weight (r + 1)^-exponent; uniform uses equal weights.
    std::vector<double> cdf;
    if (p.kind == GeneratorKind::kPowerLaw) {
      cdf.resize(p.num_dst);
      double acc = 0.0;
      for (std::size_t r = 0; r < p.num_dst; ++r) {
        acc += std::pow(static_cast<double>(r + 1), -p.exponent);
        cdf[r] = acc;
      }
    }
    auto draw_dst = [&]() -> VertexId {
      if (cdf.empty()) return static_cast<VertexId>(rng.below(p.num_dst));
      const double x = rng.unit() * cdf.back();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
      return static_cast<VertexId>(std::min<std::size_t>(it - cdf.begin(), p.num_dst - 1));
    };

    const std::size_t max_attempts = 64 * p.num_edges + 1024;
    std::size_t attempts = 0;
    while (edges.size() < p.num_edges && attempts < max_attempts) {
      ++attempts;
      const auto u = static_cast<VertexId>(rng.below(p.num_src));
      const VertexId v = draw_dst();
      const std::uint64_t key = static_cast<std::uint64_t>(u) * p.num_dst + v;
      if (taken.insert(key).second) edges.push_back({u, v});
    }
    if (edges.size() < p.num_edges) {
      // Saturated heavy destinations: finish uniformly over the free pairs.
      auto rest = sample_without_replacement(rng, p.num_src, p.num_dst, p.num_edges - edges.size(), taken);
      edges.insert(edges.end(), rest.begin(), rest.end());
    }
  }

  Relation rel{"S", "D", std::string(to_string(p.kind))};
  const std::size_t bytes = p.feature_dim * kBytesPerElement;
  return SemanticGraph::from_edges(p.num_src, p.num_dst, std::move(edges), std::move(rel), bytes, bytes);
}

ValidationReport validate(const SemanticGraph& g) {
  const kernels::DegreeStats d = kernels::omp::degree_stats(g);
  ValidationReport r;
  r.duplicate_edges = g.dropped_duplicates();
  r.isolated_src = d.isolated_src;
  r.isolated_dst = d.isolated_dst;
  r.min_src_degree = d.min_src_degree;
  r.max_src_degree = d.max_src_degree;
  r.min_dst_degree = d.min_dst_degree;
  r.max_dst_degree = d.max_dst_degree;
  return r;
}

void write_validation(std::ostream& out, const ValidationReport& r) {
  out << "duplicate_edges = " << r.duplicate_edges << '\n'
      << "isolated_src = " << r.isolated_src << '\n'
      << "isolated_dst = " << r.isolated_dst << '\n'
      << "min_src_degree = " << r.min_src_degree << '\n'
      << "max_src_degree = " << r.max_src_degree << '\n'
      << "min_dst_degree = " << r.min_dst_degree << '\n'
      << "max_dst_degree = " << r.max_dst_degree << '\n';
}

}  // namespace hgr
