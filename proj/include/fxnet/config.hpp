#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fxnet/rolling.hpp"

namespace fxnet {

/// Plain `key = value` configuration ('#' comments, blank lines ignored).
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, std::string fallback) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// "1999-01-01:2000-12-31,2001-01-01:2002-12-31" -> ranges.
std::vector<DateRange> parse_block_ranges(std::string_view text);

/// "19:0.8,1:0.0" -> block specs.
std::vector<std::pair<int, double>> parse_block_specs(std::string_view text);

} // namespace fxnet
