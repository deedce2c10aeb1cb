#include "fxnet/rolling.hpp"

#include <algorithm>

#include "fxnet/dates.hpp"
#include "fxnet/error.hpp"

namespace fxnet {

void WindowSpec::validate() const {
    if (mode == Mode::Sliding) {
        if (length_days < 20) throw ValidationError("window length must be at least 20 days");
        if (step_days < 1) throw ValidationError("window step must be at least 1 day");
    } else {
        if (block_boundaries.empty())
            throw ValidationError("blocks mode needs explicit boundaries");
        for (std::size_t k = 0; k < block_boundaries.size(); ++k) {
            const auto& b = block_boundaries[k];
            if (dates::parse_iso(b.start) > dates::parse_iso(b.end))
                throw ValidationError("block range " + b.start + ":" + b.end + " is inverted");
            if (k > 0 && !(block_boundaries[k - 1].end < b.start))
                throw ValidationError("block ranges must be ordered and non-overlapping");
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> make_windows(
    std::span<const std::string> dates_axis, const WindowSpec& spec) {
    spec.validate();
    std::vector<std::pair<std::size_t, std::size_t>> windows;

    if (spec.mode == WindowSpec::Mode::Sliding) {
        const auto length = static_cast<std::size_t>(spec.length_days);
        const auto step = static_cast<std::size_t>(spec.step_days);
        if (length > dates_axis.size())
            throw SizeError("window length " + std::to_string(length) + " exceeds " +
                            std::to_string(dates_axis.size()) + " available dates");
        for (std::size_t start = 0; start + length <= dates_axis.size(); start += step)
            windows.emplace_back(start, start + length);
        return windows;
    }

    for (const auto& b : spec.block_boundaries) {
        auto lo = std::lower_bound(dates_axis.begin(), dates_axis.end(), b.start);
        auto hi = std::upper_bound(dates_axis.begin(), dates_axis.end(), b.end);
        auto first = static_cast<std::size_t>(lo - dates_axis.begin());
        auto last = static_cast<std::size_t>(hi - dates_axis.begin());
        if (last - first < 20)
            throw SizeError("block " + b.start + ":" + b.end + " covers fewer than 20 dates");
        windows.emplace_back(first, last);
    }
    return windows;
}

std::vector<WindowResult> rolling_analysis(const RatePanel& panel, const CurrencyCode& base,
                                           const WindowSpec& spec, double clip_threshold) {
    auto windows = make_windows(panel.dates, spec);
    std::vector<WindowResult> results(windows.size());
    std::exception_ptr failure;

    // windows are independent; results land in window order by index
    #pragma omp parallel for schedule(dynamic)
    for (long kk = 0; kk < static_cast<long>(windows.size()); ++kk) {
        auto k = static_cast<std::size_t>(kk);
        try {
            auto [first, last] = windows[k];
            RatePanel slice = slice_panel(panel, first, last);
            ReturnMatrix returns = build_return_matrix(slice, base, clip_threshold);
            CorrelationNetwork net = correlation_matrix(returns);
            SpanningTree tree = build_mst(net);
            results[k] = WindowResult{
                compute_metrics(net, tree, std::to_string(k), slice.dates.back()), tree};
        } catch (const Error& e) {
            #pragma omp critical
            if (!failure) {
                auto [first, last] = windows[k];
                failure = std::make_exception_ptr(Error(
                    e.kind(), "window " + std::to_string(k) + " [" + panel.dates[first] + " .. " +
                                  panel.dates[last - 1] + "]: " + e.what()));
            }
        } catch (...) {
            #pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<MetricsReport> rolling_metrics(const RatePanel& panel, const CurrencyCode& base,
                                           const WindowSpec& spec, double clip_threshold) {
    auto results = rolling_analysis(panel, base, spec, clip_threshold);
    std::vector<MetricsReport> reports;
    reports.reserve(results.size());
    for (auto& r : results) reports.push_back(std::move(r.report));
    return reports;
}

SurvivalSeries survival_curves(std::span<const SpanningTree> trees, int max_delta) {
    if (trees.size() < 2) throw SizeError("survival curves need at least 2 trees");
    if (max_delta < 1 || static_cast<std::size_t>(max_delta) >= trees.size())
        throw SizeError("max_delta must lie in [1, tree count)");
    const std::size_t n = trees[0].size();
    std::vector<EdgeSet> sets;
    sets.reserve(trees.size());
    for (const auto& t : trees) {
        if (t.nodes != trees[0].nodes)
            throw ValidationError("survival curves require identical node sets");
        sets.push_back(edge_set(t));
    }

    SurvivalSeries series;
    for (int delta = 1; delta <= max_delta; ++delta) {
        const auto d = static_cast<std::size_t>(delta);
        double sigma_sum = 0.0, multi_sum = 0.0;
        const std::size_t origins = sets.size() - d;
        for (std::size_t i = 0; i < origins; ++i) {
            sigma_sum += survival_single(sets[i], sets[i + d], n);
            multi_sum += survival_multi(std::span<const EdgeSet>(sets).subspan(i, d + 1), n);
        }
        series.delta_values.push_back(delta);
        series.sigma.push_back(sigma_sum / static_cast<double>(origins));
        series.Sigma.push_back(multi_sum / static_cast<double>(origins));
    }
    return series;
}

} // namespace fxnet
