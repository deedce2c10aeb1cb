#pragma once

#include <span>
#include <string>
#include <vector>

#include "fxnet/matrix.hpp"
#include "fxnet/metrics.hpp"
#include "fxnet/rolling.hpp"
#include "fxnet/tree.hpp"

namespace fxnet {

/// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_double(double v);

/// Graphviz DOT: penwidth proportional to the edge weight, green edges mark
/// anticorrelated pairs.
std::string to_dot(const SpanningTree& tree);

std::string to_graphml(const SpanningTree& tree);

/// `nodeA,nodeB,distance,weight,anticorrelated` rows in canonical edge order.
std::string edges_csv(const SpanningTree& tree);

/// Square CSV with a leading header row and column of currency codes.
std::string matrix_csv(const Matrix& m, std::span<const CurrencyCode> nodes);

std::string metrics_json(const MetricsReport& report);
std::string metrics_json(std::span<const MetricsReport> reports);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);

/// `delta,sigma,Sigma`; fractions by default, x100 with percent = true.
std::string survival_csv(const SurvivalSeries& series, bool percent = false);

/// `window_end_date,value` series for one scalar metric.
std::string metric_series_csv(std::span<const MetricsReport> reports,
                              double MetricsReport::* field);

} // namespace fxnet
