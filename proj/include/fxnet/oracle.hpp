#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fxnet/correlation.hpp"
#include "fxnet/matrix.hpp"
#include "fxnet/metrics.hpp"
#include "fxnet/tree.hpp"

// Brute-force reference implementations. These are deliberately independent
// of the fast paths they check: exhaustive enumeration instead of greedy or
// algebraic shortcuts. Size caps keep them honest.
namespace fxnet::oracle {

/// Minimum total distance over all N^(N-2) labeled spanning trees, enumerated
/// via Prufer sequences. N <= 7.
double mst_total_distance(const Matrix& distances);

/// Decode a Prufer sequence (length N-2, entries in [0, N)) into tree edges.
std::vector<std::pair<std::size_t, std::size_t>> decode_prufer(
    std::span<const std::size_t> seq, std::size_t n);

/// Betweenness of x by walking the unique path of every ordered pair. N <= 12.
double betweenness(const SpanningTree& tree, const CurrencyCode& x);

/// Mean hop count by running a BFS from every node.
double path_length_bfs(const SpanningTree& tree);

/// Direct triple-loop evaluation of the weighted clustering coefficient.
ClusteringResult weighted_clustering(const CorrelationNetwork& net);

/// Uniform random labeled tree on n nodes (random Prufer sequence).
std::vector<std::pair<std::size_t, std::size_t>> random_tree(std::size_t n,
                                                             std::uint64_t seed);

} // namespace fxnet::oracle
