#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "hgr/errors.hpp"
#include "hgr/graph.hpp"

using namespace hgr;

namespace {

GraphMeta meta(std::size_t ns, std::size_t nd) {
  GraphMeta m;
  m.num_src = ns;
  m.num_dst = nd;
  return m;
}

LoadResult load(const std::string& text, const GraphMeta& m) {
  std::istringstream in(text);
  return load_edge_list(in, m);
}

std::size_t parse_error_line(const std::string& text, const GraphMeta& m) {
  try {
    load(text, m);
  } catch (const ParseError& e) {
    return e.line();
  }
  FAIL("expected a ParseError");
  return 0;
}

void check_csr_consistency(const SemanticGraph& g) {
  std::size_t fwd_total = 0, rev_total = 0;
  for (VertexId u = 0; u < g.num_src(); ++u) {
    const auto nb = g.out_neighbors(u);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (const VertexId v : nb) {
      const auto back = g.in_neighbors(v);
      CHECK(std::binary_search(back.begin(), back.end(), u));
    }
    fwd_total += nb.size();
  }
  for (VertexId v = 0; v < g.num_dst(); ++v) {
    const auto nb = g.in_neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (const VertexId u : nb) CHECK(g.has_edge(u, v));
    rev_total += nb.size();
  }
  CHECK(fwd_total == g.num_edges());
  CHECK(rev_total == g.num_edges());
  for (const Edge& e : g.edges()) CHECK(g.has_edge(e.src, e.dst));
}

}  // namespace

TEST_CASE("load_edge_list builds sorted dual adjacency") {
  const auto r = load("0 0\n0 1\n1 0\n", meta(2, 2));
  CHECK(r.graph.num_edges() == 3);
  const auto n0 = r.graph.out_neighbors(0);
  CHECK(std::vector<VertexId>(n0.begin(), n0.end()) == std::vector<VertexId>{0, 1});
  const auto r0 = r.graph.in_neighbors(0);
  CHECK(std::vector<VertexId>(r0.begin(), r0.end()) == std::vector<VertexId>{0, 1});
  CHECK(r.duplicates == 0);
  check_csr_consistency(r.graph);
}

TEST_CASE("load_edge_list reports the offending line") {
  CHECK(parse_error_line("5 0\n", meta(2, 2)) == 1);
  CHECK(parse_error_line("# header\n0 0\n\n0 9\n", meta(2, 2)) == 4);
  CHECK(parse_error_line("0 x\n", meta(2, 2)) == 1);
  CHECK(parse_error_line("0 0\n-1 0\n", meta(2, 2)) == 2);
  CHECK(parse_error_line("0 0 0\n", meta(2, 2)) == 1);
  CHECK(parse_error_line("0\n", meta(2, 2)) == 1);
  CHECK(parse_error_line("1.5 0\n", meta(2, 2)) == 1);
}

TEST_CASE("comments, blank lines and duplicates") {
  const auto r = load("# c\n\n0 1  # trailing\n0 1\n\t1 0\n0 1\n", meta(2, 2));
  CHECK(r.graph.num_edges() == 2);
  CHECK(r.duplicates == 2);
  CHECK(validate(r.graph).duplicate_edges == 2);
}

TEST_CASE("IMDB-sized actor->movie metadata is accepted") {
  GraphMeta m = meta(6124, 4932);
  m.relation = {"A", "M", "A->M"};
  const auto r = load("6123 4931\n0 0\n", m);
  CHECK(r.graph.num_src() == 6124);
  CHECK(r.graph.num_dst() == 4932);
  CHECK(r.graph.relation().name == "A->M");
}

TEST_CASE("serialization reproduces the deduplicated sorted edge list") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t ns = 1 + rng() % 30, nd = 1 + rng() % 30;
    std::set<std::pair<VertexId, VertexId>> truth;
    std::ostringstream text;
    const std::size_t lines = rng() % 120;
    for (std::size_t i = 0; i < lines; ++i) {
      const auto u = static_cast<VertexId>(rng() % ns), v = static_cast<VertexId>(rng() % nd);
      truth.insert({u, v});
      text << u << ' ' << v << '\n';
    }
    const auto r = load(text.str(), meta(ns, nd));
    std::ostringstream expected;
    for (const auto& [u, v] : truth) expected << u << ' ' << v << '\n';
    std::ostringstream written;
    write_edge_list(written, r.graph);
    CHECK(written.str() == expected.str());
    CHECK(r.duplicates == lines - truth.size());
    check_csr_consistency(r.graph);
  }
}

TEST_CASE("csr consistency on generated graphs") {
  for (std::size_t i = 0; i < 40; ++i) check_csr_consistency(testing::corpus_graph(i));
}

TEST_CASE("metadata round trip and errors") {
  GraphMeta m = meta(3025, 3025);
  m.relation = {"P", "P", "P->P"};
  m.feature_dim_src = 1902;
  m.feature_dim_dst = 1902;
  std::ostringstream out;
  write_meta(out, m);
  std::istringstream in(out.str());
  const GraphMeta back = parse_meta(in);
  CHECK(back.num_src == 3025);
  CHECK(back.relation == m.relation);
  CHECK(back.feature_dim_src == 1902);

  std::istringstream shared("num_src = 2\nnum_dst = 3\nfeature_dim = 16\n");
  const GraphMeta s = parse_meta(shared);
  CHECK(s.feature_dim_src == 16);
  CHECK(s.feature_dim_dst == 16);

  std::istringstream unknown("num_src = 1\nnum_dst = 1\ncolour = red\n");
  CHECK_THROWS_AS(parse_meta(unknown), ParseError);
  std::istringstream missing("num_src = 1\n");
  CHECK_THROWS_AS(parse_meta(missing), ParseError);
  std::istringstream bad("num_src = -1\nnum_dst = 1\n");
  CHECK_THROWS_AS(parse_meta(bad), ParseError);
}

TEST_CASE("semantic graph build over an IMDB-shaped schema") {
  HetGraph het;
  het.vertex_types = {{"M", 4932}, {"D", 2393}, {"A", 6124}, {"K", 7971}};
  const std::vector<std::pair<std::string, std::string>> rels = {{"A", "M"}, {"M", "A"}, {"K", "M"},
                                                                 {"M", "K"}, {"D", "M"}, {"M", "D"}};
  std::mt19937_64 rng(3);
  for (const auto& [s, d] : rels) {
    het.relations.push_back({s, d, s + "->" + d});
    std::vector<Edge> es;
    for (int i = 0; i < 200; ++i)
      es.push_back({static_cast<VertexId>(rng() % het.vertex_types[s]), static_cast<VertexId>(rng() % het.vertex_types[d])});
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    het.relation_edges.push_back(es);
  }
  CHECK(het.is_heterogeneous());

  const auto graphs = build_semantic_graphs(het);
  REQUIRE(graphs.size() == 6);
  std::size_t total = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    CHECK(graphs[i].relation().name == het.relations[i].name);
    CHECK(graphs[i].num_src() == het.vertex_types[het.relations[i].src_type]);
    CHECK(graphs[i].num_dst() == het.vertex_types[het.relations[i].dst_type]);
    total += graphs[i].num_edges();
  }
  CHECK(total == het.total_edges());
}

TEST_CASE("same-typed relation is role-split") {
  HetGraph het;
  het.vertex_types = {{"P", 3025}, {"A", 5959}};
  het.relations = {{"P", "P", "P->P"}};
  het.relation_edges = {{{0, 0}, {1, 0}, {3024, 7}}};
  const auto graphs = build_semantic_graphs(het);
  REQUIRE(graphs.size() == 1);
  CHECK(graphs[0].num_src() == 3025);
  CHECK(graphs[0].num_dst() == 3025);
  // s0 -> d0 is an ordinary bipartite edge, not a self loop.
  CHECK(graphs[0].has_edge(0, 0));
  CHECK(graphs[0].out_degree(0) == 1);
}

TEST_CASE("semantic graph build edge cases") {
  HetGraph empty;
  empty.vertex_types = {{"A", 3}};
  CHECK(build_semantic_graphs(empty).empty());
  CHECK_FALSE(empty.is_heterogeneous());

  HetGraph bad;
  bad.vertex_types = {{"A", 3}};
  bad.relations = {{"A", "Z", "A->Z"}};
  bad.relation_edges = {{}};
  CHECK_THROWS_AS(build_semantic_graphs(bad), SchemaError);

  HetGraph out_of_range;
  out_of_range.vertex_types = {{"A", 3}, {"B", 2}};
  out_of_range.relations = {{"A", "B", ""}};
  out_of_range.relation_edges = {{{0, 5}}};
  CHECK_THROWS_AS(build_semantic_graphs(out_of_range), ParseError);
}

TEST_CASE("uniform generator fills K_{4,4} at full density") {
  GeneratorParams p;
  p.num_src = 4;
  p.num_dst = 4;
  p.num_edges = 16;
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    p.seed = seed;
    const auto g = gen_synthetic(p);
    CHECK(g.num_edges() == 16);
    for (VertexId u = 0; u < 4; ++u) CHECK(g.out_degree(u) == 4);
  }
}

TEST_CASE("generator is deterministic for a fixed seed") {
  GeneratorParams p;
  p.num_src = 100;
  p.num_dst = 100;
  p.num_edges = 500;
  p.seed = 7;
  const auto a = gen_synthetic(p), b = gen_synthetic(p);
  CHECK(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end()));
  CHECK(a.num_edges() == 500);
  p.seed = 8;
  CHECK(gen_synthetic(p).fingerprint() != a.fingerprint());

  p.kind = GeneratorKind::kPowerLaw;
  CHECK(gen_synthetic(p).fingerprint() == gen_synthetic(p).fingerprint());
}

TEST_CASE("power-law generator skews destination degrees") {
  GeneratorParams p;
  p.kind = GeneratorKind::kPowerLaw;
  p.num_src = 1000;
  p.num_dst = 100;
  p.num_edges = 5000;
  p.seed = 1;
  const auto g = gen_synthetic(p);
  CHECK(g.num_edges() == 5000);
  CHECK(g.dropped_duplicates() == 0);
  const auto r = validate(g);
  const double mean = 5000.0 / 100.0;
  CHECK(static_cast<double>(r.max_dst_degree) > 3.0 * mean);
}

TEST_CASE("power-law generator saturating heavy destinations still terminates") {
  GeneratorParams p;
  p.kind = GeneratorKind::kPowerLaw;
  p.num_src = 5;
  p.num_dst = 5;
  p.num_edges = 25;
  p.exponent = 3.0;
  const auto g = gen_synthetic(p);
  CHECK(g.num_edges() == 25);
}

TEST_CASE("generator rejects infeasible edge counts") {
  GeneratorParams p;
  p.num_src = 3;
  p.num_dst = 3;
  p.num_edges = 10;
  CHECK_THROWS_AS(gen_synthetic(p), ConfigError);
  p.num_src = 0;
  p.num_edges = 1;
  CHECK_THROWS_AS(gen_synthetic(p), ConfigError);
  CHECK_THROWS_AS(parse_generator_kind("gaussian"), ConfigError);
}

TEST_CASE("validate reports isolation and degree extrema") {
  const auto star = testing::star(3);
  auto r = validate(star);
  CHECK(r.isolated_src == 0);
  CHECK(r.isolated_dst == 0);
  CHECK(r.max_src_degree == 3);

  const auto sparse = testing::make(3, 2, {{0, 0}, {0, 1}});
  r = validate(sparse);
  CHECK(r.isolated_src == 2);
  CHECK(r.min_src_degree == 0);

  const auto k22 = testing::complete(2, 2);
  r = validate(k22);
  CHECK(r.duplicate_edges == 0);
  CHECK(r.min_src_degree == 2);
  CHECK(r.max_src_degree == 2);
  CHECK(r.min_dst_degree == 2);
  CHECK(r.max_dst_degree == 2);

  const auto empty = testing::make(0, 0, {});
  r = validate(empty);
  CHECK(r == ValidationReport{});
}
