#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fxnet/currency.hpp"

namespace fxnet {

struct FetchOptions {
    std::filesystem::path cache_dir;
    int max_retries = 3;        // attempts per URL
    int timeout_seconds = 10;
    std::string start_date;     // substituted for {start}
    std::string end_date;       // substituted for {end}
};

struct FetchResult {
    struct Item {
        CurrencyCode code;
        std::filesystem::path path;
        bool ok = false;
        bool from_cache = false;
        std::string error;
    };
    std::vector<Item> items;

    bool all_ok() const;
    std::vector<CurrencyCode> failed_currencies() const;
};

/// Download one raw file per currency into `<cache>/<CODE>.csv`. The template
/// must contain a {code} placeholder ({start}/{end} optional). Existing
/// non-empty cache files are kept untouched (idempotent re-runs). Each failure
/// is retried up to max_retries times, then reported per currency; an empty
/// response body counts as a failure.
FetchResult fetch_panel(const std::string& url_template,
                        std::span<const CurrencyCode> currencies,
                        const FetchOptions& options);

} // namespace fxnet
