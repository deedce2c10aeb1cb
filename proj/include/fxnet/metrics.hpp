#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fxnet/correlation.hpp"
#include "fxnet/panel.hpp"
#include "fxnet/tree.hpp"

namespace fxnet {

struct NodeMetrics {
    int degree = 0;
    double betweenness = 0.0;

    bool operator==(const NodeMetrics&) const = default;
};

/// Per-snapshot metric bundle for one base currency.
struct MetricsReport {
    CurrencyCode base;
    std::string window_id;        // "full" or the window ordinal
    std::string window_end_date;
    std::map<CurrencyCode, NodeMetrics> per_node;
    double path_length = 0.0;          // mean MST hop count, ordered pairs
    double clustering = 0.0;           // average weighted clustering coefficient
    double internode_distance = 0.0;   // mean metric distance, complete network
    double lambda_max = 0.0;           // dominant eigenvalue of R
};

/// Count of MST edges incident to x. Throws NotFoundError for unknown nodes.
int node_degree(const SpanningTree& tree, const CurrencyCode& x);

/// Fraction of ordered node pairs (Y,Z), both distinct from X, whose unique
/// tree path passes through X; denominator (N-1)(N-2). Computed from subtree
/// sizes in O(N). Requires N >= 3.
double betweenness(const SpanningTree& tree, const CurrencyCode& x);

/// Betweenness of every node in one O(N) pass (same definition).
std::vector<double> betweenness_all(const SpanningTree& tree);

/// Mean hop count over ordered node pairs of the unweighted tree, via the
/// edge-side subtree-count identity. Requires N >= 2.
double path_length(const SpanningTree& tree);

struct ClusteringResult {
    std::vector<double> per_node;  // c~(X), aligned with net.nodes
    double average = 0.0;          // C~
};

namespace kernels {

/// diag(A^3) for a zero-diagonal symmetric n x n matrix; serial reference.
void cube_diagonal_serial(const double* a, std::size_t n, double* diag);
/// OpenMP-parallel variant; bit-identical to the serial kernel.
void cube_diagonal_parallel(const double* a, std::size_t n, double* diag);

} // namespace kernels

/// Average weighted clustering coefficient of the complete network:
/// c~(X) = [1/(K(K-1))] sum over ordered neighbor pairs (Y,Z) of
/// (w~_XY w~_YZ w~_ZX)^(1/3), with weights normalized by the maximum
/// off-diagonal weight and K = N-1. Requires N >= 3 and a nonzero weight.
ClusteringResult weighted_clustering(const CorrelationNetwork& net);

/// Mean metric distance over ordered node pairs; in [0, 2], sqrt(2) for a
/// fully uncorrelated network.
double internode_distance(const CorrelationNetwork& net);

/// (#{X : d(X,a) < d(X,b)}, #{X : d(X,b) < d(X,a)}) over X distinct from both;
/// exact ties count for neither.
std::pair<int, int> proximity_count(const CorrelationNetwork& net,
                                    const CurrencyCode& a, const CurrencyCode& b);

/// Per-day mean over price currencies X of ln(cross-rate base/X).
std::vector<double> average_log_rate(const RatePanel& panel, const CurrencyCode& base);

/// Assemble the full report for one snapshot.
MetricsReport compute_metrics(const CorrelationNetwork& net, const SpanningTree& tree,
                              std::string window_id, std::string window_end_date);

} // namespace fxnet
