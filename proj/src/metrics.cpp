#include "fxnet/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fxnet/error.hpp"

namespace fxnet {

namespace {

// Subtree sizes for the tree rooted at node 0, plus each node's parent.
// Iterative DFS; order holds nodes in visit order (parents before children).
struct RootedView {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> subtree;
    std::vector<std::size_t> order;
};

RootedView root_tree(const SpanningTree& tree) {
    const std::size_t n = tree.size();
    auto adj = tree.adjacency();
    RootedView view{std::vector<std::size_t>(n, n), std::vector<std::size_t>(n, 1), {}};
    view.order.reserve(n);
    std::vector<std::size_t> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        view.order.push_back(u);
        for (std::size_t v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            view.parent[v] = u;
            stack.push_back(v);
        }
    }
    if (view.order.size() != n) throw ValidationError("tree is not connected");
    for (auto it = view.order.rbegin(); it != view.order.rend(); ++it)
        if (view.parent[*it] < n) view.subtree[view.parent[*it]] += view.subtree[*it];
    return view;
}

} // namespace

int node_degree(const SpanningTree& tree, const CurrencyCode& x) {
    std::size_t idx = tree.index_of(x);
    int deg = 0;
    for (const auto& e : tree.edges) deg += (e.a == idx) + (e.b == idx);
    return deg;
}

std::vector<double> betweenness_all(const SpanningTree& tree) {
    const std::size_t n = tree.size();
    if (n < 3) throw SizeError("betweenness needs at least 3 nodes");
    auto view = root_tree(tree);
    auto adj = tree.adjacency();

    // Removing x splits the tree into components: one per child subtree plus
    // the parent side. Ordered through-pairs = (N-1)^2 - sum comp_i^2.
    const double denom = static_cast<double>((n - 1) * (n - 2));
    std::vector<double> out(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        std::size_t comp_sq = 0;
        std::size_t child_total = 0;
        for (std::size_t v : adj[x]) {
            if (view.parent[v] == x) {
                comp_sq += view.subtree[v] * view.subtree[v];
                child_total += view.subtree[v];
            }
        }
        if (x != 0) {
            std::size_t above = n - 1 - child_total;
            comp_sq += above * above;
        }
        out[x] = (static_cast<double>((n - 1) * (n - 1)) - static_cast<double>(comp_sq)) / denom;
    }
    return out;
}

double betweenness(const SpanningTree& tree, const CurrencyCode& x) {
    std::size_t idx = tree.index_of(x);
    return betweenness_all(tree)[idx];
}

double path_length(const SpanningTree& tree) {
    const std::size_t n = tree.size();
    if (n < 2) throw SizeError("path length needs at least 2 nodes");
    auto view = root_tree(tree);
    // each edge (v, parent v) lies on subtree(v) * (n - subtree(v)) unordered paths
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        if (view.parent[v] >= n) continue;  // root
        double s = static_cast<double>(view.subtree[v]);
        sum += s * (static_cast<double>(n) - s);
    }
    return 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

namespace kernels {

void cube_diagonal_serial(const double* a, std::size_t n, double* diag) {
    // diag(A^3)_x = sum_y (A^2)_xy * A_yx; A symmetric, zero diagonal
    std::vector<double> a2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* rk = a + k * n;
            double* ri = a2.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) ri[j] += aik * rk[j];
        }
    for (std::size_t x = 0; x < n; ++x) {
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) acc += a2[x * n + y] * a[y * n + x];
        diag[x] = acc;
    }
}

void cube_diagonal_parallel(const double* a, std::size_t n, double* diag) {
    std::vector<double> a2(n * n, 0.0);
    #pragma omp parallel for schedule(static)
    for (long ii = 0; ii < static_cast<long>(n); ++ii) {
        auto i = static_cast<std::size_t>(ii);
        for (std::size_t k = 0; k < n; ++k) {
            double aik = a[i * n + k];
            if (aik == 0.0) continue;
            const double* rk = a + k * n;
            double* ri = a2.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) ri[j] += aik * rk[j];
        }
    }
    #pragma omp parallel for schedule(static)
    for (long xx = 0; xx < static_cast<long>(n); ++xx) {
        auto x = static_cast<std::size_t>(xx);
        double acc = 0.0;
        for (std::size_t y = 0; y < n; ++y) acc += a2[x * n + y] * a[y * n + x];
        diag[x] = acc;
    }
}

} // namespace kernels

ClusteringResult weighted_clustering(const CorrelationNetwork& net) {
    const std::size_t n = net.size();
    if (n < 3) throw SizeError("weighted clustering needs at least 3 nodes");

    double max_w = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) max_w = std::max(max_w, net.weights(i, j));
    if (!(max_w > 0.0)) throw DegenerateError("all edge weights are zero");

    // cube-root weights, normalized by the max off-diagonal weight
    Matrix a(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) a(i, j) = std::cbrt(net.weights(i, j) / max_w);

    std::vector<double> diag(n);
    kernels::cube_diagonal_parallel(a.data(), n, diag.data());

    const double denom = static_cast<double>((n - 1) * (n - 2));
    ClusteringResult result;
    result.per_node.resize(n);
    double sum = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        result.per_node[x] = diag[x] / denom;
        sum += result.per_node[x];
    }
    result.average = sum / static_cast<double>(n);
    return result;
}

double internode_distance(const CorrelationNetwork& net) {
    const std::size_t n = net.size();
    if (n < 2) throw SizeError("internode distance needs at least 2 nodes");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += net.distances(i, j);
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::pair<int, int> proximity_count(const CorrelationNetwork& net, const CurrencyCode& a,
                                    const CurrencyCode& b) {
    if (a == b) throw ValidationError("proximity_count needs two distinct nodes");
    std::size_t ia = net.index_of(a);
    std::size_t ib = net.index_of(b);
    int count_a = 0, count_b = 0;
    for (std::size_t x = 0; x < net.size(); ++x) {
        if (x == ia || x == ib) continue;
        double da = net.distances(x, ia);
        double db = net.distances(x, ib);
        if (da < db)
            ++count_a;
        else if (db < da)
            ++count_b;
        // exact ties count for neither side
    }
    return {count_a, count_b};
}

std::vector<double> average_log_rate(const RatePanel& panel, const CurrencyCode& base) {
    auto series = cross_rates(panel, base);
    if (series.empty()) throw SizeError("no price currencies for " + base.str());
    std::vector<double> out(panel.date_count(), 0.0);
    for (const auto& s : series)
        for (std::size_t t = 0; t < s.values.size(); ++t) out[t] += std::log(s.values[t]);
    for (auto& v : out) v /= static_cast<double>(series.size());
    return out;
}

MetricsReport compute_metrics(const CorrelationNetwork& net, const SpanningTree& tree,
                              std::string window_id, std::string window_end_date) {
    MetricsReport report;
    report.base = net.base;
    report.window_id = std::move(window_id);
    report.window_end_date = std::move(window_end_date);

    auto btw = betweenness_all(tree);
    for (std::size_t i = 0; i < tree.size(); ++i) {
        NodeMetrics nm;
        nm.betweenness = btw[i];
        report.per_node.emplace(tree.nodes[i], nm);
    }
    for (const auto& e : tree.edges) {
        ++report.per_node.at(tree.nodes[e.a]).degree;
        ++report.per_node.at(tree.nodes[e.b]).degree;
    }

    report.path_length = path_length(tree);
    report.clustering = weighted_clustering(net).average;
    report.internode_distance = internode_distance(net);
    report.lambda_max = largest_eigenvalue(net);
    return report;
}

} // namespace fxnet
