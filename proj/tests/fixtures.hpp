#pragma once

// Named graphs, a seeded random corpus, and independent test-side oracles.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <list>
#include <random>
#include <unordered_map>
#include <vector>

#include "hgr/graph.hpp"
#include "hgr/locality.hpp"

namespace hgr::testing {

inline SemanticGraph make(std::size_t ns, std::size_t nd, std::vector<Edge> edges) {
  return SemanticGraph::from_edges(ns, nd, std::move(edges));
}

// s0 -> {d0..d(k-1)}
inline SemanticGraph star(std::size_t k) {
  std::vector<Edge> e;
  for (VertexId v = 0; v < k; ++v) e.push_back({0, v});
  return make(1, k, e);
}

// {(s0,d0),(s1,d0),(s1,d1)}
inline SemanticGraph path3() { return make(2, 2, {{0, 0}, {1, 0}, {1, 1}}); }

inline SemanticGraph four_cycle() { return make(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

inline SemanticGraph complete(std::size_t ns, std::size_t nd) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < ns; ++u)
    for (VertexId v = 0; v < nd; ++v) e.push_back({u, v});
  return make(ns, nd, e);
}

// Graph whose edge set is the bitmask over the ns x nd grid (bit u*nd+v).
inline SemanticGraph from_mask(std::size_t ns, std::size_t nd, std::uint64_t mask) {
  std::vector<Edge> e;
  for (VertexId u = 0; u < ns; ++u)
    for (VertexId v = 0; v < nd; ++v)
      if (mask >> (u * nd + v) & 1u) e.push_back({u, v});
  return make(ns, nd, e);
}

// Small random bipartite graph with at most 6+6 vertices and 24 edges.
inline SemanticGraph small_random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t ns = 1 + rng() % 6;
  const std::size_t nd = 1 + rng() % 6;
  const std::size_t max_e = std::min<std::size_t>(24, ns * nd);
  GeneratorParams p;
  p.kind = rng() % 2 ? GeneratorKind::kPowerLaw : GeneratorKind::kUniform;
  p.num_src = ns;
  p.num_dst = nd;
  p.num_edges = rng() % (max_e + 1);
  p.seed = rng();
  return gen_synthetic(p);
}

// Mixed-generator corpus: up to 2000 vertices and 10000 edges per graph.
inline GeneratorParams corpus_params(std::size_t i) {
  std::mt19937_64 rng(0x5eed0000ull + i);
  GeneratorParams p;
  p.kind = i % 2 ? GeneratorKind::kPowerLaw : GeneratorKind::kUniform;
  p.num_src = 1 + rng() % 1000;
  p.num_dst = 1 + rng() % 1000;
  const std::uint64_t cap = std::min<std::uint64_t>(10000, p.num_src * p.num_dst);
  // Spread densities: average degree from ~0.05 to ~10.
  const double frac = static_cast<double>(rng() % 1001) / 1000.0;
  p.num_edges = static_cast<std::size_t>(frac * frac * static_cast<double>(cap));
  p.seed = rng();
  p.exponent = 1.0 + static_cast<double>(rng() % 11) / 10.0;
  return p;
}

inline SemanticGraph corpus_graph(std::size_t i) { return gen_synthetic(corpus_params(i)); }

// Exhaustive maximum matching over all 2^|E| edge subsets (|E| <= 20).
inline std::size_t subset_matching_oracle(const SemanticGraph& g) {
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::uint64_t src_used = 0, dst_used = 0;
    bool ok = true;
    std::size_t count = 0;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      const std::uint64_t sb = std::uint64_t{1} << edges[i].src, db = std::uint64_t{1} << edges[i].dst;
      ok = !(src_used & sb) && !(dst_used & db);
      src_used |= sb;
      dst_used |= db;
      ++count;
    }
    if (ok) best = std::max(best, count);
  }
  return best;
}

// Smallest vertex cover by enumerating vertex subsets (|V| <= 16).
inline std::size_t min_vertex_cover_oracle(const SemanticGraph& g) {
  const std::size_t ns = g.num_src(), n = g.num_vertices();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    bool covers = true;
    for (const Edge& e : g.edges())
      if (!(mask >> e.src & 1u) && !(mask >> (ns + e.dst) & 1u)) {
        covers = false;
        break;
      }
    if (covers) best = size;
  }
  return best;
}

// Plain list-based LRU/FIFO buffer, unpinned and unsegmented. Returns per-ref
// fetch counts.
inline std::vector<std::uint64_t> naive_buffer(const AccessTrace& t, std::size_t capacity, bool lru) {
  std::vector<std::uint64_t> fetches(t.num_refs(), 0);
  std::list<VertexRef> order;  // front = next victim
  std::unordered_map<VertexRef, std::list<VertexRef>::iterator> where;
  for (const Access& a : t.accesses) {
    auto it = where.find(a.vertex);
    if (it != where.end()) {
      if (lru) {
        order.erase(it->second);
        order.push_back(a.vertex);
        it->second = std::prev(order.end());
      }
      continue;
    }
    ++fetches[a.vertex];
    if (order.size() == capacity) {
      where.erase(order.front());
      order.pop_front();
    }
    order.push_back(a.vertex);
    where[a.vertex] = std::prev(order.end());
  }
  return fetches;
}

}  // namespace hgr::testing
