#include "fxnet/fetch.hpp"

#include <fstream>

#include <httplib.h>

#include "fxnet/error.hpp"

namespace fxnet {

bool FetchResult::all_ok() const {
    for (const auto& item : items)
        if (!item.ok) return false;
    return true;
}

std::vector<CurrencyCode> FetchResult::failed_currencies() const {
    std::vector<CurrencyCode> out;
    for (const auto& item : items)
        if (!item.ok) out.push_back(item.code);
    return out;
}

namespace {

void substitute(std::string& text, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
}

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw ValidationError("url template must start with http:// or https://");
    std::size_t slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

} // namespace

FetchResult fetch_panel(const std::string& url_template,
                        std::span<const CurrencyCode> currencies,
                        const FetchOptions& options) {
    if (url_template.find("{code}") == std::string::npos)
        throw ValidationError("url template must contain a {code} placeholder");
    if (currencies.empty()) throw ValidationError("no currencies to fetch");

    std::error_code ec;
    std::filesystem::create_directories(options.cache_dir, ec);
    if (ec) throw IoError("cannot create cache directory " + options.cache_dir.string());

    FetchResult result;
    for (const auto& code : currencies) {
        FetchResult::Item item;
        item.code = code;
        item.path = options.cache_dir / (code.str() + ".csv");

        if (std::filesystem::exists(item.path) && std::filesystem::file_size(item.path) > 0) {
            item.ok = true;
            item.from_cache = true;
            result.items.push_back(std::move(item));
            continue;
        }

        std::string url = url_template;
        substitute(url, "{code}", code.str());
        substitute(url, "{start}", options.start_date);
        substitute(url, "{end}", options.end_date);
        SplitUrl parts = split_url(url);

        std::string body;
        std::string last_error = "no attempt made";
        for (int attempt = 0; attempt < std::max(1, options.max_retries); ++attempt) {
            httplib::Client client(parts.origin);
            client.set_connection_timeout(options.timeout_seconds, 0);
            client.set_read_timeout(options.timeout_seconds, 0);
            auto res = client.Get(parts.path);
            if (!res) {
                last_error = "connection failed (" + httplib::to_string(res.error()) + ")";
                continue;
            }
            if (res->status != 200) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            if (res->body.empty()) {
                last_error = "empty response body";
                continue;
            }
            body = res->body;
            last_error.clear();
            break;
        }

        if (last_error.empty()) {
            // write-then-rename keeps partially written files out of the cache
            auto tmp = item.path;
            tmp += ".part";
            {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                out.write(body.data(), static_cast<std::streamsize>(body.size()));
                if (!out) {
                    item.error = "cannot write " + tmp.string();
                    result.items.push_back(std::move(item));
                    continue;
                }
            }
            std::filesystem::rename(tmp, item.path, ec);
            if (ec) {
                item.error = "cannot move cache file into place";
            } else {
                item.ok = true;
            }
        } else {
            item.error = code.str() + ": " + last_error + " after " +
                         std::to_string(std::max(1, options.max_retries)) + " attempts";
        }
        result.items.push_back(std::move(item));
    }
    return result;
}

} // namespace fxnet
