#include "hgr/recouple.hpp"

#include <ostream>

#include "hgr/errors.hpp"
#include "hgr/kernels.hpp"

namespace hgr {

RecoupleMode parse_mode(const std::string& s) {
  if (s == "konig") return RecoupleMode::kKonig;
  if (s == "paper-literal") return RecoupleMode::kPaperLiteral;
  throw ConfigError("unknown mode '" + s + "' (expected konig or paper-literal)");
}

const char* to_string(RecoupleMode mode) {
  return mode == RecoupleMode::kKonig ? "konig" : "paper-literal";
}

const char* to_string(SubgraphKind kind) {
  switch (kind) {
    case SubgraphKind::kOutIn: return "g1";
    case SubgraphKind::kInIn: return "g2";
    case SubgraphKind::kInOut: return "g3";
    case SubgraphKind::kWhole: return "whole";
  }
  return "?";
}

Role stationary_role(SubgraphKind kind) {
  return kind == SubgraphKind::kOutIn ? Role::kDst : Role::kSrc;
}

namespace {

std::vector<VertexId> ids_with(const std::vector<std::uint8_t>& flags, std::uint8_t value) {
  std::vector<VertexId> out;
  for (VertexId i = 0; i < flags.size(); ++i)
    if (flags[i] == value) out.push_back(i);
  return out;
}

std::size_t count_set(const std::vector<std::uint8_t>& flags) {
  std::size_t n = 0;
  for (const auto f : flags) n += f != 0;
  return n;
}

}  // namespace

std::vector<VertexId> Partition::src_in_ids() const { return ids_with(src_in, 1); }
std::vector<VertexId> Partition::src_out_ids() const { return ids_with(src_in, 0); }
std::vector<VertexId> Partition::dst_in_ids() const { return ids_with(dst_in, 1); }
std::vector<VertexId> Partition::dst_out_ids() const { return ids_with(dst_in, 0); }
std::size_t Partition::src_in_count() const { return count_set(src_in); }
std::size_t Partition::dst_in_count() const { return count_set(dst_in); }

Partition select_backbone_konig(const SemanticGraph& g, const Matching& m) {
  check_matching(g, m);
  const std::size_t ns = g.num_src();
  const std::size_t nd = g.num_dst();
  std::vector<std::uint8_t> src_reached(ns, 0);
  std::vector<std::uint8_t> dst_reached(nd, 0);

  std::vector<VertexId> frontier;
  for (VertexId u = 0; u < ns; ++u) {
    if (!m.src_matched(u)) {
      src_reached[u] = 1;
      frontier.push_back(u);
    }
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const VertexId u = frontier[head];
    for (const VertexId v : g.out_neighbors(u)) {
      if (v == m.src_partner[u] || dst_reached[v]) continue;
      dst_reached[v] = 1;
      const VertexId w = m.dst_partner[v];
      if (w == kNoVertex)
        throw ContractError("matching is not maximum: augmenting path ends at destination " + std::to_string(v));
      if (!src_reached[w]) {
        src_reached[w] = 1;
        frontier.push_back(w);
      }
    }
  }

  Partition p;
  p.mode = RecoupleMode::kKonig;
  p.src_in.resize(ns);
  for (std::size_t u = 0; u < ns; ++u) p.src_in[u] = !src_reached[u];
  p.dst_in = std::move(dst_reached);
  return p;
}

Partition select_backbone_paper(const SemanticGraph& g, const Matching& m) {
  check_matching(g, m);
  Partition p;
  p.mode = RecoupleMode::kPaperLiteral;
  p.src_in.assign(g.num_src(), 0);
  p.dst_in.assign(g.num_dst(), 0);

  for (VertexId v = 0; v < g.num_src(); ++v) {
    if (!m.src_matched(v)) continue;
    for (const VertexId x : g.out_neighbors(v)) {
      if (!m.dst_matched(x)) {
        p.src_in[v] = 1;  // x lands in dst_out, which is the default class
        break;
      }
    }
  }
  for (VertexId u = 0; u < g.num_dst(); ++u) {
    if (!m.dst_matched(u)) continue;
    for (const VertexId x : g.in_neighbors(u)) {
      if (!m.src_matched(x)) {
        p.dst_in[u] = 1;
        break;
      }
    }
  }
  return p;
}

Partition select_backbone(const SemanticGraph& g, const Matching& m, RecoupleMode mode) {
  return mode == RecoupleMode::kKonig ? select_backbone_konig(g, m) : select_backbone_paper(g, m);
}

std::size_t verify_cover(const SemanticGraph& g, const Partition& p) {
  if (p.src_in.size() != g.num_src() || p.dst_in.size() != g.num_dst())
    throw ContractError("partition dimensions do not match the graph");
  return kernels::omp::count_uncovered(g, p.src_in, p.dst_in);
}

std::size_t SubgraphTriple::total_edges() const {
  return parts[0].graph.num_edges() + parts[1].graph.num_edges() + parts[2].graph.num_edges();
}

namespace {

Subgraph compact(const SemanticGraph& parent, SubgraphKind kind, const std::vector<Edge>& edges) {
  std::vector<VertexId> src_local(parent.num_src(), kNoVertex);
  std::vector<VertexId> dst_local(parent.num_dst(), kNoVertex);
  for (const Edge& e : edges) {
    src_local[e.src] = 0;
    dst_local[e.dst] = 0;
  }
  Subgraph s;
  s.kind = kind;
  for (VertexId u = 0; u < parent.num_src(); ++u) {
    if (src_local[u] == kNoVertex) continue;
    src_local[u] = static_cast<VertexId>(s.src_ids.size());
    s.src_ids.push_back(u);
  }
  for (VertexId v = 0; v < parent.num_dst(); ++v) {
    if (dst_local[v] == kNoVertex) continue;
    dst_local[v] = static_cast<VertexId>(s.dst_ids.size());
    s.dst_ids.push_back(v);
  }
  std::vector<Edge> local;
  local.reserve(edges.size());
  for (const Edge& e : edges) local.push_back({src_local[e.src], dst_local[e.dst]});
  Relation rel = parent.relation();
  rel.name += std::string(rel.name.empty() ? "" : ".") + to_string(kind);
  s.graph = SemanticGraph::from_edges(s.src_ids.size(), s.dst_ids.size(), std::move(local), std::move(rel),
                                      parent.feature_bytes_src(), parent.feature_bytes_dst());
  return s;
}

}  // namespace

SubgraphTriple generate_subgraphs(const SemanticGraph& g, const Partition& p) {
  if (p.src_in.size() != g.num_src() || p.dst_in.size() != g.num_dst())
    throw ContractError("partition dimensions do not match the graph");
  const auto classes = kernels::omp::classify_edges(g, p.src_in, p.dst_in);

  SubgraphTriple t;
  t.mode = p.mode;
  std::array<std::vector<Edge>, 3> buckets;
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto c = classes[i];
    if (c == kernels::EdgeClass::kUncovered) {
      if (p.mode == RecoupleMode::kKonig)
        throw ContractError("edge (" + std::to_string(edges[i].src) + "," + std::to_string(edges[i].dst) +
                            ") has no endpoint in the backbone");
      ++t.uncovered_routed;
      c = kernels::EdgeClass::kInIn;
    }
    buckets[static_cast<std::size_t>(c)].push_back(edges[i]);
  }
  for (std::size_t k = 0; k < 3; ++k) t.parts[k] = compact(g, static_cast<SubgraphKind>(k), buckets[k]);
  return t;
}

Restructured restructure(const SemanticGraph& g, RecoupleMode mode) {
  Restructured r;
  auto d = decouple(g);
  r.matching = std::move(d.matching);
  r.events = d.events;
  r.partition = select_backbone(g, r.matching, mode);
  r.uncovered = verify_cover(g, r.partition);
  r.triple = generate_subgraphs(g, r.partition);
  return r;
}

void write_partition(std::ostream& out, const Partition& p) {
  auto line = [&out](const char* key, const std::vector<VertexId>& ids) {
    out << key << " =";
    for (const VertexId id : ids) out << ' ' << id;
    out << '\n';
  };
  out << "mode = " << to_string(p.mode) << '\n';
  line("src_in", p.src_in_ids());
  line("src_out", p.src_out_ids());
  line("dst_in", p.dst_in_ids());
  line("dst_out", p.dst_out_ids());
}

void write_remap(std::ostream& out, const Subgraph& s) {
  out << "# role local parent\n";
  for (std::size_t i = 0; i < s.src_ids.size(); ++i) out << "src " << i << ' ' << s.src_ids[i] << '\n';
  for (std::size_t i = 0; i < s.dst_ids.size(); ++i) out << "dst " << i << ' ' << s.dst_ids[i] << '\n';
}

}  // namespace hgr
