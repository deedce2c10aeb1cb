#include "fxnet/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "fxnet/dates.hpp"
#include "fxnet/error.hpp"
#include "fxnet/exporters.hpp"

namespace fxnet {

std::optional<std::size_t> RatePanel::index_of(const CurrencyCode& code) const {
    auto it = std::lower_bound(currencies.begin(), currencies.end(), code);
    if (it != currencies.end() && *it == code)
        return static_cast<std::size_t>(it - currencies.begin());
    return std::nullopt;
}

void RatePanel::validate() const {
    if (rates.rows() != currencies.size() || rates.cols() != dates.size())
        throw ValidationError("panel shape mismatch");
    for (std::size_t i = 1; i < currencies.size(); ++i)
        if (!(currencies[i - 1] < currencies[i]))
            throw ValidationError("panel currencies must be unique and sorted");
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (!(dates[i - 1] < dates[i]))
            throw ValidationError("panel dates must be strictly increasing");
    for (std::size_t i = 0; i < rates.rows(); ++i)
        for (std::size_t j = 0; j < rates.cols(); ++j) {
            double v = rates(i, j);
            if (!std::isfinite(v) || v <= 0.0)
                throw ValidationError("non-positive rate for " + currencies[i].str() +
                                      " on " + dates[j]);
        }
}

std::string ParseReport::summary() const {
    std::ostringstream os;
    for (const auto& r : rejected_currencies)
        os << "rejected " << r.code.str() << ": missing " << r.missing << "/" << r.total
           << " dates\n";
    if (filled_cells > 0) os << "forward-filled " << filled_cells << " cells\n";
    if (!dropped_dates.empty()) os << "dropped " << dropped_dates.size() << " incomplete dates\n";
    return os.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("line " + std::to_string(line_no) + ": malformed numeric cell '" +
                         std::string(cell) + "'");
    return v;
}

constexpr double kMissing = -1.0;  // sentinel inside the staging matrix

} // namespace

RatePanel parse_panel(std::string_view csv, const CurrencyCode& quote,
                      const ParsePolicy& policy, ParseReport* report) {
    ParseReport local;
    ParseReport& rep = report ? *report : local;
    rep = ParseReport{};

    auto lines = split(csv, '\n');
    if (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty panel file");

    auto header = split(trim(lines[0]), ',');
    if (header.empty() || trim(header[0]) != "date")
        throw ParseError("line 1: header must start with 'date'");
    std::vector<CurrencyCode> header_codes;
    for (std::size_t c = 1; c < header.size(); ++c) {
        CurrencyCode code{trim(header[c])};
        if (std::find(header_codes.begin(), header_codes.end(), code) != header_codes.end())
            throw ValidationError("duplicate currency column " + code.str());
        header_codes.push_back(code);
    }
    if (header_codes.empty()) throw ParseError("line 1: no currency columns");

    // rows keyed by date; cells hold kMissing where empty
    std::map<std::string, std::vector<double>> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = trim(lines[li]);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw ParseError("line " + std::to_string(li + 1) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(cells.size()));
        std::string date{trim(cells[0])};
        if (!dates::is_valid_iso(date))
            throw ParseError("line " + std::to_string(li + 1) + ": invalid date '" + date + "'");
        if (rows.count(date))
            throw ValidationError("line " + std::to_string(li + 1) + ": duplicate date " + date);
        std::vector<double> vals(header_codes.size(), kMissing);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            std::string_view cell = trim(cells[c]);
            if (cell.empty()) continue;
            double v = parse_cell(cell, li + 1);
            if (!std::isfinite(v) || v <= 0.0)
                throw ValidationError("line " + std::to_string(li + 1) + ": non-positive rate '" +
                                      std::string(cell) + "' for " + header_codes[c - 1].str());
            vals[c - 1] = policy.invert ? 1.0 / v : v;
        }
        rows.emplace(std::move(date), std::move(vals));
    }
    if (rows.empty()) throw ParseError("panel has no data rows");

    const std::size_t n_dates = rows.size();

    // reject currencies with too many raw gaps
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < header_codes.size(); ++c) {
        std::size_t missing = 0;
        for (const auto& [date, vals] : rows)
            if (vals[c] == kMissing) ++missing;
        if (static_cast<double>(missing) >
            policy.max_missing_frac * static_cast<double>(n_dates)) {
            rep.rejected_currencies.push_back({header_codes[c], missing, n_dates});
        } else {
            keep.push_back(c);
        }
    }
    if (keep.empty()) throw ValidationError("all currencies rejected by missing-data policy");

    // column-sorted view of the survivors
    std::vector<std::pair<CurrencyCode, std::size_t>> order;
    for (std::size_t c : keep) order.emplace_back(header_codes[c], c);
    std::sort(order.begin(), order.end());

    RatePanel panel{quote, {}, {}, {}};
    for (const auto& [date, vals] : rows) panel.dates.push_back(date);
    for (const auto& [code, col] : order) panel.currencies.push_back(code);

    Matrix staged(order.size(), n_dates, kMissing);
    {
        std::size_t j = 0;
        for (const auto& [date, vals] : rows) {
            for (std::size_t i = 0; i < order.size(); ++i) staged(i, j) = vals[order[i].second];
            ++j;
        }
    }

    // forward-fill short gaps
    for (std::size_t i = 0; i < staged.rows(); ++i) {
        std::size_t j = 0;
        while (j < n_dates) {
            if (staged(i, j) != kMissing) {
                ++j;
                continue;
            }
            std::size_t run_end = j;
            while (run_end < n_dates && staged(i, run_end) == kMissing) ++run_end;
            const std::size_t run = run_end - j;
            if (j > 0 && run <= static_cast<std::size_t>(policy.max_gap)) {
                for (std::size_t k = j; k < run_end; ++k) staged(i, k) = staged(i, j - 1);
                rep.filled_cells += run;
            }
            j = run_end;
        }
    }

    // drop dates that still have holes
    std::vector<std::size_t> full_dates;
    for (std::size_t j = 0; j < n_dates; ++j) {
        bool complete = true;
        for (std::size_t i = 0; i < staged.rows(); ++i)
            if (staged(i, j) == kMissing) {
                complete = false;
                break;
            }
        if (complete)
            full_dates.push_back(j);
        else
            rep.dropped_dates.push_back(panel.dates[j]);
    }
    if (full_dates.empty()) throw ValidationError("no complete dates after missing-data policy");

    std::vector<std::string> kept_dates;
    kept_dates.reserve(full_dates.size());
    Matrix rates(staged.rows(), full_dates.size());
    for (std::size_t jj = 0; jj < full_dates.size(); ++jj) {
        kept_dates.push_back(panel.dates[full_dates[jj]]);
        for (std::size_t i = 0; i < staged.rows(); ++i) rates(i, jj) = staged(i, full_dates[jj]);
    }
    panel.dates = std::move(kept_dates);
    panel.rates = std::move(rates);
    panel.validate();
    return panel;
}

std::string serialize_panel(const RatePanel& panel) {
    std::string out = "date";
    for (const auto& c : panel.currencies) {
        out += ',';
        out += c.str();
    }
    out += '\n';
    for (std::size_t j = 0; j < panel.date_count(); ++j) {
        out += panel.dates[j];
        for (std::size_t i = 0; i < panel.currency_count(); ++i) {
            out += ',';
            out += format_double(panel.rates(i, j));
        }
        out += '\n';
    }
    return out;
}

std::vector<CrossRateSeries> cross_rates(const RatePanel& panel, const CurrencyCode& base) {
    auto base_row = panel.index_of(base);
    if (!base_row && base != panel.quote)
        throw NotFoundError("base currency " + base.str() + " not in panel");

    std::vector<CrossRateSeries> out;
    out.reserve(panel.currency_count());
    const std::size_t T = panel.date_count();
    for (std::size_t i = 0; i < panel.currency_count(); ++i) {
        if (base_row && i == *base_row) continue;
        CrossRateSeries s{base, panel.currencies[i], std::vector<double>(T)};
        for (std::size_t t = 0; t < T; ++t) {
            double denom = base_row ? panel.rates(*base_row, t) : 1.0;  // rate(Q/Q) = 1
            s.values[t] = panel.rates(i, t) / denom;
        }
        out.push_back(std::move(s));
    }
    return out;
}

RatePanel redenominate(const RatePanel& panel, const CurrencyCode& new_quote) {
    if (new_quote == panel.quote) return panel;
    auto row = panel.index_of(new_quote);
    if (!row) throw NotFoundError("new quote currency " + new_quote.str() + " not in panel");

    RatePanel out{new_quote, panel.dates, panel.currencies,
                  Matrix(panel.currency_count(), panel.date_count())};
    for (std::size_t i = 0; i < panel.currency_count(); ++i)
        for (std::size_t t = 0; t < panel.date_count(); ++t)
            out.rates(i, t) = panel.rates(i, t) / panel.rates(*row, t);
    return out;
}

RatePanel slice_panel(const RatePanel& panel, std::size_t first, std::size_t last) {
    if (first >= last || last > panel.date_count())
        throw SizeError("invalid panel slice [" + std::to_string(first) + ", " +
                        std::to_string(last) + ")");
    RatePanel out{panel.quote,
                  {panel.dates.begin() + static_cast<long>(first),
                   panel.dates.begin() + static_cast<long>(last)},
                  panel.currencies,
                  Matrix(panel.currency_count(), last - first)};
    for (std::size_t i = 0; i < panel.currency_count(); ++i)
        for (std::size_t t = first; t < last; ++t) out.rates(i, t - first) = panel.rates(i, t);
    return out;
}

} // namespace fxnet
