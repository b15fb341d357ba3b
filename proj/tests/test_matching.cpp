#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "hgr/errors.hpp"
#include "hgr/matching.hpp"

using namespace hgr;

namespace {

void check_valid_and_maximal(const SemanticGraph& g, const Matching& m) {
  CHECK_NOTHROW(check_matching(g, m));
  // No edge may join two unmatched endpoints.
  for (const Edge& e : g.edges()) CHECK((m.src_matched(e.src) || m.dst_matched(e.dst)));
}

}  // namespace

TEST_CASE("named fixtures") {
  CHECK(max_matching(testing::star(4)).size == 1);
  CHECK(max_matching(testing::four_cycle()).size == 2);
  CHECK(max_matching(testing::make(3, 3, {})).size == 0);
  CHECK(max_matching(testing::make(0, 0, {})).size == 0);

  const auto path = testing::path3();
  const Matching m = max_matching(path);
  CHECK(m.size == 2);
  CHECK(m.src_partner == std::vector<VertexId>{0, 1});
  CHECK(m.dst_partner == std::vector<VertexId>{0, 1});
  // Frozen from the exhaustive subset oracle.
  CHECK(testing::subset_matching_oracle(path) == 2);
  CHECK(testing::subset_matching_oracle(testing::four_cycle()) == 2);
}

TEST_CASE("brute-force oracle") {
  CHECK(brute_force_matching_size(testing::complete(2, 3)) == 2);
  CHECK(testing::subset_matching_oracle(testing::complete(2, 3)) == 2);
  CHECK(brute_force_matching_size(testing::make(1, 1, {{0, 0}})) == 1);
  CHECK(brute_force_matching_size(testing::complete(3, 3)) == 3);
  CHECK(brute_force_matching_size(testing::make(2, 2, {})) == 0);
  CHECK(brute_force_matching_size(testing::complete(4, 6)) == 4);
  CHECK_THROWS_AS(brute_force_matching_size(testing::complete(5, 5)), ConfigError);
}

TEST_CASE("matching equals both oracles on every graph up to 12 grid cells") {
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {1, 5}, {2, 2}, {2, 3}, {3, 2}, {3, 3},
                                                        {2, 6}, {6, 2}, {3, 4}, {4, 3}};
  std::size_t graphs = 0;
  for (const auto& [ns, nd] : shapes) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (ns * nd)); ++mask) {
      const auto g = testing::from_mask(ns, nd, mask);
      const Matching m = max_matching(g);
      const std::size_t expected = testing::subset_matching_oracle(g);
      REQUIRE(m.size == expected);
      REQUIRE(brute_force_matching_size(g) == expected);
      check_valid_and_maximal(g, m);
      ++graphs;
    }
  }
  CHECK(graphs > 10000);
}

TEST_CASE("matching is valid, maximum and deterministic on the random corpus") {
  for (std::size_t i = 0; i < 60; ++i) {
    const auto g = testing::corpus_graph(i);
    const Matching a = max_matching(g);
    const Matching b = max_matching(g);
    CHECK(a == b);
    check_valid_and_maximal(g, a);
  }
}

TEST_CASE("decoupler event tallies") {
  CHECK(decoupler_event_counts(testing::make(2, 2, {})) == DecoupleEvents{});

  const auto single = decoupler_event_counts(testing::make(1, 1, {{0, 0}}));
  CHECK(single.pushes == 1);
  CHECK(single.pops == 0);

  const auto star = decoupler_event_counts(testing::star(3));
  CHECK(star.pushes >= 1);
  CHECK(star.pops == 0);

  // s0 takes d0; s1 probes d0, continues from s0, which moves to d1 (one pop).
  const auto rematch = decouple(testing::make(2, 2, {{0, 0}, {0, 1}, {1, 0}}));
  CHECK(rematch.matching.size == 2);
  CHECK(rematch.matching.src_partner == std::vector<VertexId>{1, 0});
  CHECK(rematch.events.pushes == 3);
  CHECK(rematch.events.pops == 1);
  CHECK(rematch.events.lookups == 4);
}

TEST_CASE("check_matching rejects malformed matchings") {
  const auto g = testing::path3();
  Matching m = max_matching(g);

  Matching not_edge = m;
  not_edge.src_partner = {1, 0};
  not_edge.dst_partner = {1, 0};
  CHECK_THROWS_AS(check_matching(g, not_edge), ContractError);

  Matching broken = m;
  broken.dst_partner[1] = kNoVertex;
  CHECK_THROWS_AS(check_matching(g, broken), ContractError);

  Matching wrong_size = m;
  wrong_size.size = 1;
  CHECK_THROWS_AS(check_matching(g, wrong_size), ContractError);

  Matching wrong_dims = m;
  wrong_dims.src_partner.push_back(kNoVertex);
  CHECK_THROWS_AS(check_matching(g, wrong_dims), ContractError);
}

TEST_CASE("matching serialization") {
  const auto g = testing::corpus_graph(3);
  const Matching m = max_matching(g);
  std::ostringstream out;
  write_matching(out, m);
  std::istringstream in(out.str());
  CHECK(parse_matching(in, g.num_src(), g.num_dst()) == m);

  std::ostringstream small;
  write_matching(small, max_matching(testing::path3()));
  CHECK(small.str() == "matching_size = 2\n# src dst\n0 0\n1 1\n");

  std::istringstream twice("matching_size = 2\n0 0\n0 1\n");
  CHECK_THROWS_AS(parse_matching(twice, 2, 2), ParseError);
  std::istringstream short_count("matching_size = 3\n0 0\n");
  CHECK_THROWS_AS(parse_matching(short_count, 2, 2), ParseError);
}
