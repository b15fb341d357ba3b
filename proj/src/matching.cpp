#include "hgr/matching.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hgr/errors.hpp"

namespace hgr {

DecoupleResult decouple(const SemanticGraph& g) {
  const std::size_t ns = g.num_src();
  const std::size_t nd = g.num_dst();
  DecoupleResult r;
  Matching& m = r.matching;
  DecoupleEvents& ev = r.events;
  m.src_partner.assign(ns, kNoVertex);
  m.dst_partner.assign(nd, kNoVertex);

  // Visited marks are stamped with the seed's epoch so they reset per search
  // without an O(|V|) clear.
  std::vector<std::uint32_t> visited(nd, 0);
  std::vector<VertexId> reached_from(nd, kNoVertex);
  std::vector<VertexId> search_list;
  std::uint32_t epoch = 0;

  for (VertexId seed = 0; seed < ns; ++seed) {
    if (m.src_partner[seed] != kNoVertex || g.out_degree(seed) == 0) continue;
    ++epoch;
    search_list.assign(1, seed);
    VertexId free_dst = kNoVertex;

    for (std::size_t head = 0; head < search_list.size() && free_dst == kNoVertex; ++head) {
      const VertexId u = search_list[head];
      for (const VertexId v : g.out_neighbors(u)) {
        ++ev.lookups;
        if (visited[v] == epoch) continue;
        visited[v] = epoch;
        reached_from[v] = u;
        ++ev.pushes;
        if (m.dst_partner[v] == kNoVertex) {
          free_dst = v;
          break;
        }
        search_list.push_back(m.dst_partner[v]);
      }
    }
    if (free_dst == kNoVertex) continue;

    // Flip the alternating path back to the seed; every source on it except
    // the seed releases its previous partner.
    VertexId v = free_dst;
    for (;;) {
      const VertexId u = reached_from[v];
      const VertexId previous = m.src_partner[u];
      m.src_partner[u] = v;
      m.dst_partner[v] = u;
      if (previous == kNoVertex) break;
      ++ev.pops;
      v = previous;
    }
    ++m.size;
  }
  return r;
}

Matching max_matching(const SemanticGraph& g) { return decouple(g).matching; }

DecoupleEvents decoupler_event_counts(const SemanticGraph& g) { return decouple(g).events; }

namespace {

struct SubsetSearch {
  const std::vector<Edge>& edges;
  std::vector<char> src_used;
  std::vector<char> dst_used;
  std::size_t best = 0;

  void run(std::size_t i, std::size_t current) {
    best = std::max(best, current);
    if (i == edges.size() || current + (edges.size() - i) <= best) return;
    const Edge& e = edges[i];
    if (!src_used[e.src] && !dst_used[e.dst]) {
      src_used[e.src] = dst_used[e.dst] = 1;
      run(i + 1, current + 1);
      src_used[e.src] = dst_used[e.dst] = 0;
    }
    run(i + 1, current);
  }
};

}  // namespace

std::size_t brute_force_matching_size(const SemanticGraph& g) {
  if (g.num_edges() > kBruteForceEdgeLimit)
    throw ConfigError("brute-force matching refuses graphs with more than " +
                      std::to_string(kBruteForceEdgeLimit) + " edges (got " + std::to_string(g.num_edges()) +
                      ")");
  // Include/exclude over every edge; the bound only skips branches that cannot
  // beat the best subset found so far.
  const std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  SubsetSearch s{edges, std::vector<char>(g.num_src(), 0), std::vector<char>(g.num_dst(), 0)};
  s.run(0, 0);
  return s.best;
}

void check_matching(const SemanticGraph& g, const Matching& m) {
  if (m.src_partner.size() != g.num_src() || m.dst_partner.size() != g.num_dst())
    throw ContractError("matching dimensions do not match the graph");
  std::size_t pairs = 0;
  for (VertexId u = 0; u < g.num_src(); ++u) {
    const VertexId v = m.src_partner[u];
    if (v == kNoVertex) continue;
    if (v >= g.num_dst() || m.dst_partner[v] != u)
      throw ContractError("matching is not an involution at source " + std::to_string(u));
    if (!g.has_edge(u, v))
      throw ContractError("matched pair (" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    ++pairs;
  }
  for (VertexId v = 0; v < g.num_dst(); ++v) {
    const VertexId u = m.dst_partner[v];
    if (u != kNoVertex && (u >= g.num_src() || m.src_partner[u] != v))
      throw ContractError("matching is not an involution at destination " + std::to_string(v));
  }
  if (pairs != m.size) throw ContractError("matching size field disagrees with partner maps");
}

void write_matching(std::ostream& out, const Matching& m) {
  out << "matching_size = " << m.size << '\n' << "# src dst\n";
  for (VertexId u = 0; u < m.src_partner.size(); ++u)
    if (m.src_partner[u] != kNoVertex) out << u << ' ' << m.src_partner[u] << '\n';
}

Matching parse_matching(std::istream& in, std::size_t num_src, std::size_t num_dst) {
  Matching m;
  m.src_partner.assign(num_src, kNoVertex);
  m.dst_partner.assign(num_dst, kNoVertex);
  std::string line;
  std::size_t lineno = 0;
  bool have_size = false;
  std::size_t declared = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!have_size) {
      std::string key, eq;
      if (!(ls >> key >> eq >> declared) || key != "matching_size" || eq != "=")
        throw ParseError("expected 'matching_size = N'", lineno);
      have_size = true;
      continue;
    }
    std::uint64_t u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) throw ParseError("expected 'src dst'", lineno);
    if (u >= num_src || v >= num_dst) throw ParseError("matched id out of range", lineno);
    if (m.src_partner[u] != kNoVertex || m.dst_partner[v] != kNoVertex)
      throw ParseError("vertex matched twice", lineno);
    m.src_partner[u] = static_cast<VertexId>(v);
    m.dst_partner[v] = static_cast<VertexId>(u);
    ++m.size;
  }
  if (!have_size) throw ParseError("missing matching_size");
  if (declared != m.size) throw ParseError("matching_size disagrees with listed pairs");
  return m;
}

}  // namespace hgr
