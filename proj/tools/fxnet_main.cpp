// fxnet command line: snapshot, evolve, compare-bases, synth, fetch.
// Exit codes: 0 success, 1 internal/numeric error, 2 usage/input error.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "fxnet/config.hpp"
#include "fxnet/correlation.hpp"
#include "fxnet/dates.hpp"
#include "fxnet/error.hpp"
#include "fxnet/exporters.hpp"
#include "fxnet/fetch.hpp"
#include "fxnet/metrics.hpp"
#include "fxnet/panel.hpp"
#include "fxnet/returns.hpp"
#include "fxnet/rolling.hpp"
#include "fxnet/synth.hpp"
#include "fxnet/tree.hpp"

namespace fs = std::filesystem;
using namespace fxnet;

namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Artifacts are staged in memory and flushed only after the whole command
// succeeded, so a failing run leaves no partial output behind.
class ArtifactSink {
public:
    explicit ArtifactSink(fs::path root) : root_(std::move(root)) {}

    void add(const fs::path& relative, std::string content) {
        staged_.emplace_back(relative, std::move(content));
    }

    void flush(const std::string& command, const std::string& config_hash,
               const std::map<std::string, std::string>& input_hashes) {
        std::sort(staged_.begin(), staged_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [rel, content] : staged_) {
            fs::path full = root_ / rel;
            fs::create_directories(full.parent_path());
            std::ofstream out(full, std::ios::binary | std::ios::trunc);
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out) throw IoError("cannot write artifact " + full.string());
        }
        nlohmann::ordered_json manifest;
        manifest["command"] = command;
        manifest["config_hash"] = config_hash;
        nlohmann::ordered_json inputs;
        for (const auto& [path, hash] : input_hashes) inputs[path] = hash;
        manifest["inputs"] = std::move(inputs);
        nlohmann::ordered_json artifacts = nlohmann::ordered_json::array();
        for (const auto& [rel, content] : staged_) artifacts.push_back(rel.generic_string());
        manifest["artifacts"] = std::move(artifacts);
        fs::create_directories(root_);
        std::ofstream out(root_ / "manifest.json", std::ios::binary | std::ios::trunc);
        out << manifest.dump(2) << "\n";
        if (!out) throw IoError("cannot write manifest");
    }

private:
    fs::path root_;
    std::vector<std::pair<fs::path, std::string>> staged_;
};

struct Options {
    std::string config_path;
    std::string input;
    std::string output = "out";
    std::string quote = "USD";
    std::string base;
    double clip_sigma = 10.0;
    int window_length = 126;
    int window_step = 21;
    std::string blocks;
    bool percent = false;
    std::vector<std::string> formats;  // dot|graphml|csv|json
    bool export_trees = false;
    int max_gap = 3;
    double max_missing_frac = 0.05;
    bool invert = false;
    int threads = 0;

    // synth
    std::string synth_blocks = "5:0.8,5:0.3";
    double synth_inter = 0.1;
    int synth_days = 500;
    std::uint64_t synth_seed = 0;
    double synth_vol = 0.01;
    std::string synth_start = "2000-01-03";
    std::string synth_out;

    // fetch
    std::string url_template;
    std::string currencies;
    std::string fetch_start;
    std::string fetch_end;
    std::string cache_dir = "cache";
    int retries = 3;

    // compare-bases positionals
    std::string compare_a;
    std::string compare_b;

    bool windows_requested = false;  // --window/--step/--blocks given explicitly
};

// Config file supplies values for everything the command line left untouched.
void overlay_config(Options& opt, const CLI::App& app,
                    const std::map<std::string, const char*>& keys) {
    if (opt.config_path.empty()) return;
    KeyValueConfig cfg = KeyValueConfig::parse_file(opt.config_path);

    auto unset = [&](const char* flag) {
        auto* o = app.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    auto maybe = [&](const char* flag, const std::string& key, auto& target) {
        if (!cfg.has(key) || !unset(flag)) return;
        std::istringstream in(*cfg.get(key));
        in >> target;
    };
    (void)keys;
    maybe("--input", "input", opt.input);
    maybe("--output", "output", opt.output);
    maybe("--quote", "quote", opt.quote);
    maybe("--base", "base", opt.base);
    maybe("--clip-sigma", "clip_sigma", opt.clip_sigma);
    maybe("--window", "window_length", opt.window_length);
    maybe("--step", "window_step", opt.window_step);
    maybe("--max-gap", "max_gap", opt.max_gap);
    maybe("--max-missing-frac", "max_missing_frac", opt.max_missing_frac);
    if (cfg.has("blocks") && unset("--blocks")) opt.blocks = *cfg.get("blocks");
    if (cfg.has("window_length") || cfg.has("window_step")) opt.windows_requested = true;
    maybe("--blocks-spec", "synth.blocks", opt.synth_blocks);
    maybe("--inter", "synth.inter", opt.synth_inter);
    maybe("--days", "synth.days", opt.synth_days);
    maybe("--seed", "synth.seed", opt.synth_seed);
    maybe("--vol", "synth.vol", opt.synth_vol);
    maybe("--start-date", "synth.start", opt.synth_start);
    maybe("--template", "fetch.template", opt.url_template);
    maybe("--currencies", "fetch.currencies", opt.currencies);
    maybe("--cache", "fetch.cache", opt.cache_dir);
    maybe("--retries", "fetch.retries", opt.retries);
}

// semantic settings only; artifact placement (the output directory) does not
// change artifact bytes and stays out of the hash
std::string settings_fingerprint(const Options& o, const std::string& command) {
    std::ostringstream os;
    os << command << '|' << o.input << '|' << o.quote << '|' << o.base << '|'
       << o.clip_sigma << '|' << o.window_length << '|' << o.window_step << '|' << o.blocks
       << '|' << o.percent << '|' << o.export_trees << '|' << o.max_gap << '|'
       << o.max_missing_frac << '|' << o.invert;
    for (const auto& f : o.formats) os << '|' << f;
    os << '|' << o.synth_blocks << '|' << o.synth_inter << '|' << o.synth_days << '|'
       << o.synth_seed << '|' << o.synth_vol << '|' << o.synth_start << '|' << o.url_template
       << '|' << o.currencies << '|' << o.fetch_start << '|' << o.fetch_end;
    return hex64(fnv1a(os.str()));
}

WindowSpec window_spec_from(const Options& opt) {
    WindowSpec spec;
    if (!opt.blocks.empty()) {
        spec.mode = WindowSpec::Mode::Blocks;
        spec.block_boundaries = parse_block_ranges(opt.blocks);
    } else {
        spec.length_days = opt.window_length;
        spec.step_days = opt.window_step;
    }
    spec.validate();
    return spec;
}

RatePanel load_panel(const Options& opt, std::map<std::string, std::string>& input_hashes,
                     ParseReport* report = nullptr) {
    if (opt.input.empty()) throw ValidationError("no input file given (--input)");
    std::string content = read_file(opt.input);
    input_hashes[opt.input] = hex64(fnv1a(content));
    ParsePolicy policy{opt.max_gap, opt.max_missing_frac, opt.invert};
    return parse_panel(content, CurrencyCode(opt.quote), policy, report);
}

std::vector<CurrencyCode> resolve_bases(const Options& opt, const RatePanel& panel) {
    if (opt.base.empty()) throw ValidationError("no base currency given (--base CODE or all)");
    if (opt.base == "all") return panel.currencies;
    CurrencyCode base(opt.base);
    if (!panel.index_of(base) && base != panel.quote)
        throw NotFoundError("base currency " + base.str() + " not in panel");
    return {base};
}

std::vector<std::string> tree_formats(const Options& opt) {
    std::vector<std::string> formats = opt.formats;
    if (formats.empty()) formats = {"dot"};
    for (const auto& f : formats)
        if (f != "dot" && f != "graphml" && f != "csv" && f != "json")
            throw ValidationError("unknown format '" + f + "' (use dot|graphml|csv|json)");
    return formats;
}

void add_tree_artifacts(ArtifactSink& sink, const fs::path& dir, const std::string& stem,
                        const SpanningTree& tree, const std::vector<std::string>& formats) {
    for (const auto& f : formats) {
        if (f == "dot") sink.add(dir / (stem + ".dot"), to_dot(tree));
        if (f == "graphml") sink.add(dir / (stem + ".graphml"), to_graphml(tree));
        if (f == "csv") sink.add(dir / (stem + "_edges.csv"), edges_csv(tree));
        // metrics JSON is always produced; "json" needs no extra tree artifact
    }
}

int run_snapshot(const Options& opt) {
    std::map<std::string, std::string> input_hashes;
    RatePanel panel = load_panel(opt, input_hashes);
    auto bases = resolve_bases(opt, panel);
    auto formats = tree_formats(opt);

    ArtifactSink sink{opt.output};
    std::string combined = metrics_csv_header();
    for (const auto& base : bases) {
        ReturnMatrix returns = build_return_matrix(panel, base, opt.clip_sigma);
        CorrelationNetwork net = correlation_matrix(returns);
        SpanningTree tree = build_mst(net);
        MetricsReport report = compute_metrics(net, tree, "full", panel.dates.back());

        fs::path dir = fs::path(base.str()) / "snapshot";
        sink.add(dir / "correlation.csv", matrix_csv(net.R, net.nodes));
        sink.add(dir / "distance.csv", matrix_csv(net.distances, net.nodes));
        add_tree_artifacts(sink, dir, "tree", tree, formats);
        sink.add(dir / "metrics.json", metrics_json(report));
        sink.add(dir / "metrics.csv", metrics_csv_header() + metrics_csv_row(report));
        combined += metrics_csv_row(report);
    }
    if (bases.size() > 1) sink.add("metrics.csv", combined);
    sink.flush("snapshot", settings_fingerprint(opt, "snapshot"), input_hashes);
    return 0;
}

int run_evolve(const Options& opt) {
    std::map<std::string, std::string> input_hashes;
    RatePanel panel = load_panel(opt, input_hashes);
    auto bases = resolve_bases(opt, panel);
    auto formats = tree_formats(opt);
    WindowSpec spec = window_spec_from(opt);

    ArtifactSink sink{opt.output};
    for (const auto& base : bases) {
        auto results = rolling_analysis(panel, base, spec, opt.clip_sigma);
        std::vector<MetricsReport> reports;
        std::vector<SpanningTree> trees;
        for (auto& r : results) {
            reports.push_back(r.report);
            trees.push_back(std::move(r.tree));
        }

        fs::path dir = fs::path(base.str()) / "evolve";
        std::string rows = metrics_csv_header();
        for (const auto& r : reports) rows += metrics_csv_row(r);
        sink.add(dir / "metrics.csv", rows);
        sink.add(dir / "metrics.json", metrics_json(std::span<const MetricsReport>(reports)));
        sink.add(dir / "path_length.csv",
                 metric_series_csv(reports, &MetricsReport::path_length));
        sink.add(dir / "clustering.csv", metric_series_csv(reports, &MetricsReport::clustering));
        sink.add(dir / "internode_distance.csv",
                 metric_series_csv(reports, &MetricsReport::internode_distance));
        sink.add(dir / "lambda_max.csv", metric_series_csv(reports, &MetricsReport::lambda_max));

        if (trees.size() >= 2) {
            SurvivalSeries survival =
                survival_curves(trees, static_cast<int>(trees.size()) - 1);
            sink.add(dir / "survival.csv", survival_csv(survival, opt.percent));
        }
        if (opt.export_trees) {
            for (std::size_t k = 0; k < trees.size(); ++k)
                add_tree_artifacts(sink, dir / "trees", "window_" + std::to_string(k), trees[k],
                                   formats);
        }
    }
    sink.flush("evolve", settings_fingerprint(opt, "evolve"), input_hashes);
    return 0;
}

int run_compare_bases(const Options& opt) {
    std::map<std::string, std::string> input_hashes;
    RatePanel panel = load_panel(opt, input_hashes);
    auto bases = resolve_bases(opt, panel);
    if (bases.size() != 1)
        throw ValidationError("compare-bases needs one explicit --base");
    CurrencyCode base = bases[0];
    CurrencyCode a(opt.compare_a);
    CurrencyCode b(opt.compare_b);

    std::vector<std::pair<std::size_t, std::size_t>> windows;
    if (opt.windows_requested || !opt.blocks.empty())
        windows = make_windows(panel.dates, window_spec_from(opt));
    else
        windows.emplace_back(0, panel.date_count());  // single full-period window

    std::string rows = "window_end_date,count_" + a.str() + ",count_" + b.str() + "\n";
    for (auto [first, last] : windows) {
        RatePanel slice = slice_panel(panel, first, last);
        ReturnMatrix returns = build_return_matrix(slice, base, opt.clip_sigma);
        CorrelationNetwork net = correlation_matrix(returns);
        auto [count_a, count_b] = proximity_count(net, a, b);
        rows += slice.dates.back() + "," + std::to_string(count_a) + "," +
                std::to_string(count_b) + "\n";
    }

    ArtifactSink sink{opt.output};
    fs::path dir = fs::path(base.str()) / "compare-bases";
    sink.add(dir / ("proximity_" + a.str() + "_" + b.str() + ".csv"), rows);
    sink.flush("compare-bases", settings_fingerprint(opt, "compare-bases"), input_hashes);
    return 0;
}

int run_synth(const Options& opt) {
    BlockModelSpec spec;
    for (auto [size, corr] : parse_block_specs(opt.synth_blocks))
        spec.blocks.push_back({size, corr});
    spec.inter_correlation = opt.synth_inter;
    spec.days = opt.synth_days;
    spec.seed = opt.synth_seed;
    spec.daily_vol = opt.synth_vol;
    spec.start_date = opt.synth_start;

    RatePanel panel = generate_panel(spec);
    std::string csv = serialize_panel(panel);

    if (!opt.synth_out.empty()) {
        fs::path out_path(opt.synth_out);
        if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
        if (!out) throw IoError("cannot write " + opt.synth_out);
        std::cerr << "wrote " << opt.synth_out << " (" << panel.currency_count()
                  << " currencies x " << panel.date_count() << " dates)\n";
        return 0;
    }
    ArtifactSink sink{opt.output};
    sink.add("panel.csv", csv);
    sink.flush("synth", settings_fingerprint(opt, "synth"), {});
    return 0;
}

int run_fetch(const Options& opt) {
    if (opt.url_template.empty()) throw ValidationError("fetch needs --template");
    std::vector<CurrencyCode> codes;
    {
        std::istringstream in(opt.currencies);
        std::string item;
        while (std::getline(in, item, ',')) {
            while (!item.empty() && item.front() == ' ') item.erase(item.begin());
            while (!item.empty() && item.back() == ' ') item.pop_back();
            if (!item.empty()) codes.emplace_back(item);
        }
    }
    if (codes.empty()) throw ValidationError("fetch needs --currencies CODE[,CODE...]");

    FetchOptions fo;
    fo.cache_dir = opt.cache_dir;
    fo.max_retries = opt.retries;
    fo.start_date = opt.fetch_start;
    fo.end_date = opt.fetch_end;
    FetchResult result = fetch_panel(opt.url_template, codes, fo);

    std::size_t hits = 0, downloads = 0;
    for (const auto& item : result.items) {
        if (item.ok && item.from_cache) ++hits;
        if (item.ok && !item.from_cache) ++downloads;
    }
    std::cerr << "fetched " << downloads << ", cache hits " << hits << "\n";
    if (!result.all_ok()) {
        std::cerr << "failed currencies:\n";
        for (const auto& item : result.items)
            if (!item.ok) std::cerr << "  " << item.code.str() << ": " << item.error << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"base-currency FX correlation networks: spanning trees, metrics, evolution"};
    app.require_subcommand(1);

    app.add_option("--config", opt.config_path, "key = value config file");
    app.add_option("--output", opt.output, "output directory (default: out)");
    app.add_option("--quote", opt.quote, "quote currency of the input panel (default: USD)");
    app.add_option("--base", opt.base, "base currency, or 'all'");
    app.add_option("--clip-sigma", opt.clip_sigma, "return clip threshold (default: 10)");
    app.add_option("--window", opt.window_length, "window length, trading days (default: 126)");
    app.add_option("--step", opt.window_step, "window step, trading days (default: 21)");
    app.add_option("--blocks", opt.blocks, "explicit windows START:END[,START:END...]");
    app.add_flag("--percent", opt.percent, "survival output in per cent instead of fractions");
    app.add_option("--format", opt.formats, "tree export format(s): dot|graphml|csv|json");
    app.add_option("--threads", opt.threads, "worker thread cap (0 = library default)");
    app.add_option("--max-gap", opt.max_gap, "longest forward-fillable gap (default: 3)");
    app.add_option("--max-missing-frac", opt.max_missing_frac,
                   "missing-data rejection threshold (default: 0.05)");
    app.add_flag("--invert", opt.invert, "input quotes are unit-per-quote, invert on ingest");

    auto* cmd_snapshot = app.add_subcommand("snapshot", "full-period network for chosen bases");
    cmd_snapshot->add_option("--input", opt.input, "panel CSV");
    auto* cmd_evolve = app.add_subcommand("evolve", "windowed metric and survival series");
    cmd_evolve->add_option("--input", opt.input, "panel CSV");
    cmd_evolve->add_flag("--export-trees", opt.export_trees, "write per-window tree exports");
    auto* cmd_compare =
        app.add_subcommand("compare-bases", "per-window proximity counts for two currencies");
    cmd_compare->add_option("--input", opt.input, "panel CSV");
    cmd_compare->add_option("currency_a", opt.compare_a, "first currency")->required();
    cmd_compare->add_option("currency_b", opt.compare_b, "second currency")->required();
    auto* cmd_synth = app.add_subcommand("synth", "generate a block-model panel CSV");
    cmd_synth->add_option("--blocks-spec", opt.synth_blocks, "SIZE:CORR[,SIZE:CORR...]");
    cmd_synth->add_option("--inter", opt.synth_inter, "cross-block correlation");
    cmd_synth->add_option("--days", opt.synth_days, "trading days");
    cmd_synth->add_option("--seed", opt.synth_seed, "generator seed");
    cmd_synth->add_option("--vol", opt.synth_vol, "daily volatility");
    cmd_synth->add_option("--start-date", opt.synth_start, "first trading day");
    cmd_synth->add_option("--out", opt.synth_out, "write panel to this file");
    auto* cmd_fetch = app.add_subcommand("fetch", "download per-currency files into a cache");
    cmd_fetch->add_option("--template", opt.url_template, "URL with {code} ({start},{end})");
    cmd_fetch->add_option("--currencies", opt.currencies, "comma-separated codes");
    cmd_fetch->add_option("--start", opt.fetch_start, "substituted for {start}");
    cmd_fetch->add_option("--end", opt.fetch_end, "substituted for {end}");
    cmd_fetch->add_option("--cache", opt.cache_dir, "cache directory (default: cache)");
    cmd_fetch->add_option("--retries", opt.retries, "attempts per URL (default: 3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        opt.windows_requested = app.get_option("--window")->count() > 0 ||
                                app.get_option("--step")->count() > 0;
        overlay_config(opt, app, {});
        if (opt.threads > 0) omp_set_num_threads(opt.threads);
        if (app.got_subcommand(cmd_snapshot)) return run_snapshot(opt);
        if (app.got_subcommand(cmd_evolve)) return run_evolve(opt);
        if (app.got_subcommand(cmd_compare)) return run_compare_bases(opt);
        if (app.got_subcommand(cmd_synth)) return run_synth(opt);
        if (app.got_subcommand(cmd_fetch)) return run_fetch(opt);
    } catch (const Error& e) {
        std::cerr << "fxnet: " << e.what() << "\n";
        return e.is_input_error() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "fxnet: internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
