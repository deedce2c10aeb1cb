#pragma once

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "fxnet/correlation.hpp"
#include "fxnet/currency.hpp"

namespace fxnet {

struct TreeEdge {
    std::size_t a = 0;        // node indices, a < b
    std::size_t b = 0;
    double distance = 0.0;
    double weight = 0.0;      // |R|
    bool anticorrelated = false;  // underlying R < 0, i.e. d > sqrt(2)
};

/// Minimal spanning tree over one network snapshot: N nodes, N-1 edges.
struct SpanningTree {
    CurrencyCode base;
    std::vector<CurrencyCode> nodes;
    std::vector<TreeEdge> edges;  // canonical order: (code_a, code_b) ascending

    std::size_t size() const { return nodes.size(); }
    double total_distance() const;
    std::size_t index_of(const CurrencyCode& code) const;  // throws NotFoundError
    std::vector<std::vector<std::size_t>> adjacency() const;
    void validate() const;  // edge count, connectivity, acyclicity
};

/// Unordered currency pair in canonical order (first < second).
using EdgeKey = std::pair<CurrencyCode, CurrencyCode>;
using EdgeSet = std::set<EdgeKey>;

/// Kruskal over ascending distance with deterministic tie-break
/// (distance, smaller code, larger code). Throws ValidationError on non-finite
/// distances, SizeError for N < 2.
SpanningTree build_mst(const CorrelationNetwork& net);

/// Same greedy construction from a raw distance matrix (no weights/flags).
std::vector<TreeEdge> mst_edges(const Matrix& distances,
                                std::span<const CurrencyCode> nodes);

/// Canonical labeled edge set of a tree.
EdgeSet edge_set(const SpanningTree& tree);

/// |e1 intersect e2| / (n - 1). Requires n >= 2.
double survival_single(const EdgeSet& e1, const EdgeSet& e2, std::size_t n);
/// Validating overload: both trees must share one node set.
double survival_single(const SpanningTree& t1, const SpanningTree& t2);

/// |intersection of all sets| / (n - 1). Throws ValidationError on empty input.
double survival_multi(std::span<const EdgeSet> sets, std::size_t n);
double survival_multi(std::span<const SpanningTree> trees);

} // namespace fxnet
