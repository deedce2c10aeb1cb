#include "fxnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include "fxnet/error.hpp"

namespace fxnet::oracle {

std::vector<std::pair<std::size_t, std::size_t>> decode_prufer(
    std::span<const std::size_t> seq, std::size_t n) {
    // standard decoding: repeatedly attach the smallest leaf
    std::vector<std::size_t> degree(n, 1);
    for (std::size_t v : seq) ++degree[v];

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(n - 1);
    std::vector<bool> used(n, false);
    for (std::size_t v : seq) {
        std::size_t leaf = n;
        for (std::size_t u = 0; u < n; ++u)
            if (degree[u] == 1 && !used[u]) {
                leaf = u;
                break;
            }
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
        used[leaf] = true;
        --degree[leaf];
        --degree[v];
    }
    std::size_t u = n, v = n;
    for (std::size_t k = 0; k < n; ++k)
        if (degree[k] == 1 && !used[k]) {
            if (u == n)
                u = k;
            else
                v = k;
        }
    edges.emplace_back(std::min(u, v), std::max(u, v));
    return edges;
}

double mst_total_distance(const Matrix& distances) {
    const std::size_t n = distances.rows();
    if (n < 2 || distances.cols() != n) throw SizeError("oracle needs a square matrix, N >= 2");
    if (n > 7) throw SizeError("exhaustive tree enumeration capped at N = 7");
    if (n == 2) return distances(0, 1);

    const std::size_t len = n - 2;
    std::vector<std::size_t> seq(len, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        auto edges = decode_prufer(seq, n);
        double total = 0.0;
        for (auto [a, b] : edges) total += distances(a, b);
        best = std::min(best, total);

        // odometer increment over base-n sequences
        std::size_t pos = 0;
        while (pos < len) {
            if (++seq[pos] < n) break;
            seq[pos] = 0;
            ++pos;
        }
        if (pos == len) break;
    }
    return best;
}

namespace {

std::vector<std::size_t> bfs_path(const std::vector<std::vector<std::size_t>>& adj,
                                  std::size_t from, std::size_t to) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> prev(n, n);
    std::deque<std::size_t> queue{from};
    prev[from] = from;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        if (u == to) break;
        for (std::size_t v : adj[u])
            if (prev[v] == n) {
                prev[v] = u;
                queue.push_back(v);
            }
    }
    std::vector<std::size_t> path;
    for (std::size_t at = to; at != from; at = prev[at]) path.push_back(at);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

double betweenness(const SpanningTree& tree, const CurrencyCode& x) {
    const std::size_t n = tree.size();
    if (n < 3) throw SizeError("betweenness needs at least 3 nodes");
    if (n > 12) throw SizeError("path-walk betweenness capped at N = 12");
    const std::size_t idx = tree.index_of(x);
    auto adj = tree.adjacency();

    std::size_t through = 0;
    for (std::size_t y = 0; y < n; ++y) {
        if (y == idx) continue;
        for (std::size_t z = 0; z < n; ++z) {
            if (z == idx || z == y) continue;
            auto path = bfs_path(adj, y, z);
            for (std::size_t k = 1; k + 1 < path.size(); ++k)
                if (path[k] == idx) {
                    ++through;
                    break;
                }
        }
    }
    return static_cast<double>(through) / static_cast<double>((n - 1) * (n - 2));
}

double path_length_bfs(const SpanningTree& tree) {
    const std::size_t n = tree.size();
    if (n < 2) throw SizeError("path length needs at least 2 nodes");
    auto adj = tree.adjacency();
    std::size_t hop_sum = 0;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> dist(n, n);
        std::deque<std::size_t> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adj[u])
                if (dist[v] == n) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
        for (std::size_t t = 0; t < n; ++t)
            if (t != s) hop_sum += dist[t];
    }
    return static_cast<double>(hop_sum) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

ClusteringResult weighted_clustering(const CorrelationNetwork& net) {
    const std::size_t n = net.size();
    if (n < 3) throw SizeError("weighted clustering needs at least 3 nodes");

    double max_w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) max_w = std::max(max_w, net.weights(i, j));
    if (!(max_w > 0.0)) throw DegenerateError("all edge weights are zero");

    ClusteringResult result;
    result.per_node.resize(n, 0.0);
    const double denom = static_cast<double>((n - 1) * (n - 2));
    double sum = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                acc += std::cbrt((net.weights(x, y) / max_w) * (net.weights(y, z) / max_w) *
                                 (net.weights(z, x) / max_w));
            }
        }
        result.per_node[x] = acc / denom;
        sum += result.per_node[x];
    }
    result.average = sum / static_cast<double>(n);
    return result;
}

std::vector<std::pair<std::size_t, std::size_t>> random_tree(std::size_t n,
                                                             std::uint64_t seed) {
    if (n < 2) throw SizeError("random tree needs at least 2 nodes");
    if (n == 2) return {{0, 1}};
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> seq(n - 2);
    for (auto& v : seq) v = static_cast<std::size_t>(gen() % n);
    return decode_prufer(seq, n);
}

} // namespace fxnet::oracle
