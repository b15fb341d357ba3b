#include "hgr/kernels.hpp"

#include <algorithm>
#include <limits>

namespace hgr::kernels {

namespace {

constexpr std::size_t kMaxSize = std::numeric_limits<std::size_t>::max();

int bucket_index(std::uint64_t replacements, std::span<const std::uint64_t> edges) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), replacements);
  return static_cast<int>(it - edges.begin()) - 1;
}

EdgeClass edge_class(bool src_in, bool dst_in) {
  if (src_in) return dst_in ? EdgeClass::kInIn : EdgeClass::kInOut;
  return dst_in ? EdgeClass::kOutIn : EdgeClass::kUncovered;
}

}  // namespace

namespace serial {

DegreeStats degree_stats(const SemanticGraph& g) {
  DegreeStats s;
  std::size_t min_src = kMaxSize, min_dst = kMaxSize;
  for (VertexId u = 0; u < g.num_src(); ++u) {
    const std::size_t d = g.out_degree(u);
    s.isolated_src += d == 0;
    min_src = std::min(min_src, d);
    s.max_src_degree = std::max(s.max_src_degree, d);
  }
  for (VertexId v = 0; v < g.num_dst(); ++v) {
    const std::size_t d = g.in_degree(v);
    s.isolated_dst += d == 0;
    min_dst = std::min(min_dst, d);
    s.max_dst_degree = std::max(s.max_dst_degree, d);
  }
  s.min_src_degree = g.num_src() ? min_src : 0;
  s.min_dst_degree = g.num_dst() ? min_dst : 0;
  return s;
}

std::size_t count_uncovered(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                            std::span<const std::uint8_t> dst_in) {
  std::size_t n = 0;
  for (const Edge& e : g.edges()) n += !src_in[e.src] && !dst_in[e.dst];
  return n;
}

std::vector<EdgeClass> classify_edges(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                                      std::span<const std::uint8_t> dst_in) {
  std::vector<EdgeClass> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.push_back(edge_class(src_in[e.src], dst_in[e.dst]));
  return out;
}

std::vector<int> bucket_of(std::span<const std::uint64_t> fetches,
                           std::span<const std::uint64_t> bucket_lower_edges) {
  std::vector<int> out(fetches.size(), -1);
  for (std::size_t i = 0; i < fetches.size(); ++i)
    if (fetches[i] > 0) out[i] = bucket_index(fetches[i] - 1, bucket_lower_edges);
  return out;
}

}  // namespace serial

namespace omp {

DegreeStats degree_stats(const SemanticGraph& g) {
  const auto ns = static_cast<std::int64_t>(g.num_src());
  const auto nd = static_cast<std::int64_t>(g.num_dst());
  std::size_t iso_src = 0, iso_dst = 0;
  std::size_t min_src = kMaxSize, max_src = 0, min_dst = kMaxSize, max_dst = 0;

#pragma omp parallel for reduction(+ : iso_src) reduction(min : min_src) reduction(max : max_src)
  for (std::int64_t u = 0; u < ns; ++u) {
    const std::size_t d = g.out_degree(static_cast<VertexId>(u));
    iso_src += d == 0;
    min_src = std::min(min_src, d);
    max_src = std::max(max_src, d);
  }
#pragma omp parallel for reduction(+ : iso_dst) reduction(min : min_dst) reduction(max : max_dst)
  for (std::int64_t v = 0; v < nd; ++v) {
    const std::size_t d = g.in_degree(static_cast<VertexId>(v));
    iso_dst += d == 0;
    min_dst = std::min(min_dst, d);
    max_dst = std::max(max_dst, d);
  }

  DegreeStats s;
  s.isolated_src = iso_src;
  s.isolated_dst = iso_dst;
  s.min_src_degree = ns ? min_src : 0;
  s.max_src_degree = max_src;
  s.min_dst_degree = nd ? min_dst : 0;
  s.max_dst_degree = max_dst;
  return s;
}

std::size_t count_uncovered(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                            std::span<const std::uint8_t> dst_in) {
  const auto edges = g.edges();
  const auto m = static_cast<std::int64_t>(edges.size());
  std::size_t n = 0;
#pragma omp parallel for reduction(+ : n)
  for (std::int64_t i = 0; i < m; ++i) n += !src_in[edges[i].src] && !dst_in[edges[i].dst];
  return n;
}

std::vector<EdgeClass> classify_edges(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                                      std::span<const std::uint8_t> dst_in) {
  const auto edges = g.edges();
  const auto m = static_cast<std::int64_t>(edges.size());
  std::vector<EdgeClass> out(edges.size());
#pragma omp parallel for
  for (std::int64_t i = 0; i < m; ++i) out[i] = edge_class(src_in[edges[i].src], dst_in[edges[i].dst]);
  return out;
}

std::vector<int> bucket_of(std::span<const std::uint64_t> fetches,
                           std::span<const std::uint64_t> bucket_lower_edges) {
  const auto n = static_cast<std::int64_t>(fetches.size());
  std::vector<int> out(fetches.size(), -1);
#pragma omp parallel for
  for (std::int64_t i = 0; i < n; ++i)
    if (fetches[i] > 0) out[i] = bucket_index(fetches[i] - 1, bucket_lower_edges);
  return out;
}

}  // namespace omp

}  // namespace hgr::kernels
