#pragma once

#include <span>
#include <vector>

#include "fxnet/currency.hpp"
#include "fxnet/matrix.hpp"
#include "fxnet/panel.hpp"

namespace fxnet {

/// N x T matrix of normalized daily log returns, one row per price currency,
/// all sharing one base currency. Rows have zero mean and unit population
/// variance after the pipeline.
struct ReturnMatrix {
    CurrencyCode base;
    std::vector<CurrencyCode> price_currencies;
    Matrix values;  // N x T

    std::size_t size() const { return price_currencies.size(); }
    std::size_t days() const { return values.cols(); }
};

/// r(i) = ln v(i+1) - ln v(i); length = len(values) - 1.
std::vector<double> log_returns(std::span<const double> values);
std::vector<double> log_returns(const CrossRateSeries& series);

/// Shift to zero mean and scale to unit population variance (1/T convention,
/// so that the correlation matrix of normalized rows has an exact unit
/// diagonal). Throws DegenerateError on zero variance.
std::vector<double> normalize(std::span<const double> returns);

struct ClipResult {
    ReturnMatrix matrix;
    std::size_t clipped_entries = 0;
};

/// Replace entries beyond +-threshold by the threshold value, then re-normalize
/// each row that was touched (single pass, no iteration). Rows without clipped
/// entries are returned bit-identical.
ClipResult clip_extremes(const ReturnMatrix& matrix, double threshold = 10.0);

/// Full pipeline for one base: cross-rates -> log returns -> normalize ->
/// clip -> re-normalize. Degenerate (zero-variance) series raise
/// DegenerateError naming the currency.
ReturnMatrix build_return_matrix(const RatePanel& panel, const CurrencyCode& base,
                                 double clip_threshold = 10.0,
                                 std::size_t* clipped_entries = nullptr);

} // namespace fxnet
