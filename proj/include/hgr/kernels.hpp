#pragma once

// Data-parallel inner loops used by the graph, recoupling and simulation
// modules. Each kernel has a serial reference in `serial::` and an OpenMP
// version in `omp::`; the two must agree exactly (tests/test_kernels.cpp).
// Library code calls the `omp::` versions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgr/graph.hpp"

namespace hgr::kernels {

struct DegreeStats {
  std::size_t isolated_src = 0;
  std::size_t isolated_dst = 0;
  std::size_t min_src_degree = 0;
  std::size_t max_src_degree = 0;
  std::size_t min_dst_degree = 0;
  std::size_t max_dst_degree = 0;

  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

// Subgraph slot of one edge given backbone membership of its endpoints.
enum class EdgeClass : std::uint8_t {
  kOutIn = 0,     // src_out x dst_in
  kInIn = 1,      // src_in x dst_in
  kInOut = 2,     // src_in x dst_out
  kUncovered = 3  // src_out x dst_out
};

namespace serial {
DegreeStats degree_stats(const SemanticGraph& g);
std::size_t count_uncovered(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                            std::span<const std::uint8_t> dst_in);
std::vector<EdgeClass> classify_edges(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                                      std::span<const std::uint8_t> dst_in);
// Per-vertex fetch counts -> histogram bucket index for each vertex (-1 = untouched).
std::vector<int> bucket_of(std::span<const std::uint64_t> fetches,
                           std::span<const std::uint64_t> bucket_lower_edges);
}  // namespace serial

namespace omp {
DegreeStats degree_stats(const SemanticGraph& g);
std::size_t count_uncovered(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                            std::span<const std::uint8_t> dst_in);
std::vector<EdgeClass> classify_edges(const SemanticGraph& g, std::span<const std::uint8_t> src_in,
                                      std::span<const std::uint8_t> dst_in);
std::vector<int> bucket_of(std::span<const std::uint64_t> fetches,
                           std::span<const std::uint64_t> bucket_lower_edges);
}  // namespace omp

}  // namespace hgr::kernels
