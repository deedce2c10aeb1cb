#include "fxnet/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fxnet/dates.hpp"
#include "fxnet/error.hpp"

namespace fxnet {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    KeyValueConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("config line " + std::to_string(line_no) +
                             ": expected 'key = value'");
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw ParseError("config line " + std::to_string(line_no) + ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, std::string fallback) const {
    auto v = get(key);
    return v ? *v : std::move(fallback);
}

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("config key '" + key + "': bad numeric value '" + text + "'");
    return value;
}

} // namespace

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto v = get(key);
    return v ? parse_number<int>(key, *v) : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? parse_number<double>(key, *v) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto v = get(key);
    return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

namespace {

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = comma == std::string_view::npos ? text.substr(pos)
                                                                : text.substr(pos, comma - pos);
        pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
        item = trim(item);
        if (!item.empty()) items.emplace_back(item);
    }
    return items;
}

} // namespace

std::vector<DateRange> parse_block_ranges(std::string_view text) {
    std::vector<DateRange> ranges;
    for (const auto& item : split_list(text)) {
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("block range '" + item + "' must be START:END");
        DateRange r{std::string(trim(std::string_view(item).substr(0, colon))),
                    std::string(trim(std::string_view(item).substr(colon + 1)))};
        if (!dates::is_valid_iso(r.start) || !dates::is_valid_iso(r.end))
            throw ParseError("block range '" + item + "' has invalid dates");
        ranges.push_back(std::move(r));
    }
    if (ranges.empty()) throw ParseError("no block ranges given");
    return ranges;
}

std::vector<std::pair<int, double>> parse_block_specs(std::string_view text) {
    std::vector<std::pair<int, double>> specs;
    for (const auto& item : split_list(text)) {
        std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("block spec '" + item + "' must be SIZE:CORRELATION");
        std::string size_s{trim(std::string_view(item).substr(0, colon))};
        std::string corr_s{trim(std::string_view(item).substr(colon + 1))};
        specs.emplace_back(parse_number<int>("blocks", size_s),
                           parse_number<double>("blocks", corr_s));
    }
    if (specs.empty()) throw ParseError("no block specs given");
    return specs;
}

} // namespace fxnet
