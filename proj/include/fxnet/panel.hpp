#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fxnet/currency.hpp"
#include "fxnet/matrix.hpp"

namespace fxnet {

/// Aligned daily quote matrix: one row per listed currency, one column per
/// trading day. Values are quote-currency-per-unit prices. Currencies are kept
/// in lexicographic order and dates strictly increasing; every cell is filled.
struct RatePanel {
    CurrencyCode quote;
    std::vector<std::string> dates;           // ISO-8601, strictly increasing
    std::vector<CurrencyCode> currencies;     // lexicographic
    Matrix rates;                             // currencies x dates

    std::size_t currency_count() const { return currencies.size(); }
    std::size_t date_count() const { return dates.size(); }

    /// Row index of `code`, or nullopt.
    std::optional<std::size_t> index_of(const CurrencyCode& code) const;

    /// Throws ValidationError if any invariant is broken.
    void validate() const;
};

/// One synthesized exchange-rate series: value(t) = rate(quote/price, t) /
/// rate(quote/base, t), i.e. units of base per one unit of price currency.
struct CrossRateSeries {
    CurrencyCode base;
    CurrencyCode price;
    std::vector<double> values;
};

struct ParsePolicy {
    int max_gap = 3;                 // longest forward-fillable missing run
    double max_missing_frac = 0.05;  // currencies above this are rejected
    bool invert = false;             // input holds unit-per-quote, invert on ingest
};

/// Diagnostics accumulated while applying the missing-data policy.
struct ParseReport {
    struct Rejection {
        CurrencyCode code;
        std::size_t missing;
        std::size_t total;
    };
    std::vector<Rejection> rejected_currencies;
    std::size_t filled_cells = 0;
    std::vector<std::string> dropped_dates;

    std::string summary() const;
};

/// Parse a `date,CODE1,CODE2,...` CSV into an aligned panel.
///
/// Policy order: currencies missing more than max_missing_frac of all parsed
/// dates are rejected; remaining gaps of at most max_gap consecutive days are
/// forward-filled; dates still incomplete afterwards are dropped.
RatePanel parse_panel(std::string_view csv, const CurrencyCode& quote,
                      const ParsePolicy& policy = {}, ParseReport* report = nullptr);

/// Full-precision CSV (round-trips bit-exactly through parse_panel).
std::string serialize_panel(const RatePanel& panel);

/// All cross-rate series for one base currency. The base must be a panel row,
/// or the quote currency itself (implicit all-ones row). The base is excluded
/// from the output.
std::vector<CrossRateSeries> cross_rates(const RatePanel& panel, const CurrencyCode& base);

/// Re-express the panel with `new_quote` (an existing row) as the quote
/// currency. The instrument set is unchanged; the new quote's own row becomes
/// all ones. Cross-rate ratios are invariant under this operation.
RatePanel redenominate(const RatePanel& panel, const CurrencyCode& new_quote);

/// Contiguous date slice [first, last) as a standalone panel.
RatePanel slice_panel(const RatePanel& panel, std::size_t first, std::size_t last);

} // namespace fxnet
