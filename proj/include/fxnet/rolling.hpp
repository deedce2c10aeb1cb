#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fxnet/metrics.hpp"
#include "fxnet/panel.hpp"
#include "fxnet/tree.hpp"

namespace fxnet {

struct DateRange {
    std::string start;  // ISO, inclusive
    std::string end;    // ISO, inclusive
};

struct WindowSpec {
    enum class Mode { Sliding, Blocks };

    int length_days = 126;
    int step_days = 21;
    Mode mode = Mode::Sliding;
    std::vector<DateRange> block_boundaries;

    /// length >= 20, step >= 1; blocks ordered and non-overlapping.
    void validate() const;
};

/// Half-open index windows [start, end) over the date axis.
/// Sliding mode: [k*step, k*step + length) while fully in range.
/// Blocks mode: one window per boundary range (each must cover >= 20 dates).
std::vector<std::pair<std::size_t, std::size_t>> make_windows(
    std::span<const std::string> dates, const WindowSpec& spec);

/// Snapshot of one window position.
struct WindowResult {
    MetricsReport report;
    SpanningTree tree;
};

/// Recompute the full pipeline (returns, normalization, clipping, correlation,
/// MST, metrics) inside every window. Windows are evaluated in parallel and
/// emitted in window order; failures carry the window id.
std::vector<WindowResult> rolling_analysis(const RatePanel& panel, const CurrencyCode& base,
                                           const WindowSpec& spec, double clip_threshold = 10.0);

std::vector<MetricsReport> rolling_metrics(const RatePanel& panel, const CurrencyCode& base,
                                           const WindowSpec& spec, double clip_threshold = 10.0);

/// Windowed edge-persistence curves.
struct SurvivalSeries {
    std::vector<int> delta_values;   // 1..max_delta
    std::vector<double> sigma;       // single-step ratio, averaged over origins
    std::vector<double> Sigma;       // multi-step ratio, averaged over origins
};

/// sigma(delta) averages survival_single(E(i), E(i+delta)) over all valid i;
/// Sigma(delta) averages the intersection of the whole chain E(i..i+delta).
/// Requires >= 2 trees over one node set and 1 <= max_delta < tree count.
SurvivalSeries survival_curves(std::span<const SpanningTree> trees, int max_delta);

} // namespace fxnet
