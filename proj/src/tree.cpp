#include "fxnet/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fxnet/error.hpp"

namespace fxnet {

namespace {

// union-find with path halving
struct DisjointSet {
    std::vector<std::size_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

double SpanningTree::total_distance() const {
    double sum = 0.0;
    for (const auto& e : edges) sum += e.distance;
    return sum;
}

std::size_t SpanningTree::index_of(const CurrencyCode& code) const {
    auto it = std::find(nodes.begin(), nodes.end(), code);
    if (it == nodes.end()) throw NotFoundError("node " + code.str() + " not in tree");
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::vector<std::size_t>> SpanningTree::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

void SpanningTree::validate() const {
    const std::size_t n = nodes.size();
    if (n < 2) throw ValidationError("tree needs at least 2 nodes");
    if (edges.size() != n - 1)
        throw ValidationError("tree must have exactly N-1 edges");
    DisjointSet ds(n);
    for (const auto& e : edges) {
        if (e.a >= n || e.b >= n || e.a == e.b)
            throw ValidationError("tree edge out of range");
        if (!ds.unite(e.a, e.b)) throw ValidationError("tree contains a cycle");
    }
}

std::vector<TreeEdge> mst_edges(const Matrix& distances, std::span<const CurrencyCode> nodes) {
    const std::size_t n = nodes.size();
    if (n < 2) throw SizeError("spanning tree needs at least 2 nodes");
    if (distances.rows() != n || distances.cols() != n)
        throw ValidationError("distance matrix shape mismatch");

    struct Candidate {
        double d;
        CurrencyCode lo, hi;
        std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = distances(i, j);
            if (!std::isfinite(d))
                throw ValidationError("non-finite distance between " + nodes[i].str() + " and " +
                                      nodes[j].str());
            auto [lo, hi] = std::minmax(nodes[i], nodes[j]);
            candidates.push_back({d, lo, hi, i, j});
        }
    }
    // deterministic greedy order: (distance, smaller code, larger code)
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
    });

    DisjointSet ds(n);
    std::vector<TreeEdge> edges;
    edges.reserve(n - 1);
    for (const auto& c : candidates) {
        if (!ds.unite(c.i, c.j)) continue;
        TreeEdge e;
        e.a = std::min(c.i, c.j);
        e.b = std::max(c.i, c.j);
        e.distance = c.d;
        edges.push_back(e);
        if (edges.size() == n - 1) break;
    }
    // canonical storage order by codes
    std::sort(edges.begin(), edges.end(), [&](const TreeEdge& x, const TreeEdge& y) {
        auto kx = std::minmax(nodes[x.a], nodes[x.b]);
        auto ky = std::minmax(nodes[y.a], nodes[y.b]);
        return kx < ky;
    });
    return edges;
}

SpanningTree build_mst(const CorrelationNetwork& net) {
    SpanningTree tree{net.base, net.nodes, mst_edges(net.distances, net.nodes)};
    for (auto& e : tree.edges) {
        e.weight = net.weights(e.a, e.b);
        e.anticorrelated = net.R(e.a, e.b) < 0.0;
    }
    tree.validate();
    return tree;
}

EdgeSet edge_set(const SpanningTree& tree) {
    EdgeSet out;
    for (const auto& e : tree.edges)
        out.insert(std::minmax(tree.nodes[e.a], tree.nodes[e.b]));
    return out;
}

double survival_single(const EdgeSet& e1, const EdgeSet& e2, std::size_t n) {
    if (n < 2) throw ValidationError("survival ratio needs at least 2 nodes");
    std::size_t common = 0;
    for (const auto& e : e1) common += e2.count(e);
    return static_cast<double>(common) / static_cast<double>(n - 1);
}

double survival_single(const SpanningTree& t1, const SpanningTree& t2) {
    if (t1.nodes != t2.nodes)
        throw ValidationError("survival ratio requires identical node sets");
    return survival_single(edge_set(t1), edge_set(t2), t1.size());
}

double survival_multi(std::span<const EdgeSet> sets, std::size_t n) {
    if (sets.empty()) throw ValidationError("survival_multi needs at least one edge set");
    if (n < 2) throw ValidationError("survival ratio needs at least 2 nodes");
    EdgeSet common = sets[0];
    for (std::size_t k = 1; k < sets.size() && !common.empty(); ++k) {
        EdgeSet next;
        for (const auto& e : common)
            if (sets[k].count(e)) next.insert(e);
        common = std::move(next);
    }
    return static_cast<double>(common.size()) / static_cast<double>(n - 1);
}

double survival_multi(std::span<const SpanningTree> trees) {
    if (trees.empty()) throw ValidationError("survival_multi needs at least one tree");
    std::vector<EdgeSet> sets;
    sets.reserve(trees.size());
    for (const auto& t : trees) {
        if (t.nodes != trees[0].nodes)
            throw ValidationError("survival ratio requires identical node sets");
        sets.push_back(edge_set(t));
    }
    return survival_multi(std::span<const EdgeSet>(sets), trees[0].size());
}

} // namespace fxnet
