// unigini - harmonize Gini observations from heterogeneous source
// databases into one canonical collection and compute cross-database
// discordance statistics.
//
// Exit codes: 0 success, 1 data-level failure, 2 environment/config failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unigini/discord.hpp"
#include "unigini/errors.hpp"
#include "unigini/ingest.hpp"
#include "unigini/kernel.hpp"
#include "unigini/manifest.hpp"
#include "unigini/observation.hpp"
#include "unigini/report.hpp"
#include "unigini/source_config.hpp"

namespace fs = std::filesystem;
using namespace unigini;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

struct GlobalOptions {
    std::string out;
    std::string meta;
    std::string filter_coverage = "national";
    std::string filter_subgroup = "overall";
    bool quiet = false;
    int threads = 1;
};

std::string join_args(int argc, char** argv) {
    std::string joined;
    for (int i = 0; i < argc; ++i) {
        if (i) joined.push_back(' ');
        joined += argv[i];
    }
    return joined;
}

void info(const GlobalOptions& g, const std::string& msg) {
    if (!g.quiet) std::cerr << msg << '\n';
}

CountryTable load_meta(const GlobalOptions& g, const char* why) {
    if (g.meta.empty()) {
        throw ConfigError(std::string("--meta <countries file> is required for ") + why);
    }
    return CountryTable::load(g.meta);
}

discord::AnalysisFilter make_filter(const GlobalOptions& g) {
    discord::AnalysisFilter f;
    if (g.filter_coverage == "any") {
        f.coverage = std::nullopt;
    } else {
        auto c = parse_area_coverage(g.filter_coverage);
        if (!c) throw ConfigError("bad --filter-coverage '" + g.filter_coverage + "'");
        f.coverage = *c;
    }
    if (g.filter_subgroup == "any") {
        f.subgroup = std::nullopt;
    } else {
        auto s = parse_subgroup(g.filter_subgroup);
        if (!s) throw ConfigError("bad --filter-subgroup '" + g.filter_subgroup + "'");
        f.subgroup = *s;
    }
    return f;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw ConfigError("write failed: " + path.string());
}

RunManifest start_manifest(const std::string& command_line,
                           const std::vector<std::string>& input_paths) {
    RunManifest m;
    m.command_line = command_line;
    m.timestamp_utc = utc_timestamp_now();
    for (const auto& p : input_paths) {
        RunManifest::Input input;
        input.path = p;
        input.sha256 = sha256_file(p, &input.bytes);
        m.inputs.push_back(std::move(input));
    }
    return m;
}

// --- subcommands -----------------------------------------------------------

struct IngestArgs {
    std::string source;
    std::string mapping;
    std::string input;
};

int run_ingest(const GlobalOptions& g, const IngestArgs& a, const std::string& cmdline) {
    if (g.out.empty()) throw ConfigError("--out is required for ingest");
    auto source = parse_source_db(a.source);
    if (!source) throw ConfigError("unknown source '" + a.source + "'");
    CountryTable meta = load_meta(g, "ingest");
    ingest::SourceConfig config = ingest::load_source_config(a.mapping, *source);
    csv::Table table = csv::read_file(a.input);

    auto result = ingest::parse_export(config, table, meta);
    auto sorted = ingest::dedup(std::move(result.accepted));

    write_canonical_file(g.out, sorted);
    {
        std::ofstream rej(g.out + ".rejects.csv", std::ios::binary);
        if (!rej) throw ConfigError("cannot write " + g.out + ".rejects.csv");
        ingest::write_rejects(rej, result.rejected);
    }
    RunManifest m = start_manifest(cmdline, {a.mapping, a.input});
    m.rows_in = table.rows.size();
    m.rows_out = sorted.size();
    write_manifest(g.out, m);

    info(g, "ingest: " + std::to_string(sorted.size()) + " accepted, " +
                std::to_string(result.rejected.size()) + " rejected -> " + g.out);
    return sorted.empty() ? kExitData : kExitOk;
}

struct MergeArgs {
    std::vector<std::string> inputs;
    std::string provenance;
};

int run_merge(const GlobalOptions& g, const MergeArgs& a, const std::string& cmdline) {
    if (g.out.empty()) throw ConfigError("--out is required for merge");
    CountryTable meta = load_meta(g, "merge");
    std::vector<std::vector<GiniObservation>> collections;
    std::uint64_t rows_in = 0;
    for (const auto& path : a.inputs) {
        collections.push_back(read_canonical_file(path, &meta));
        rows_in += collections.back().size();
    }
    auto merged = ingest::merge(collections);

    write_canonical_file(g.out, merged.observations);
    const std::string prov_path =
        a.provenance.empty() ? g.out + ".provenance.csv" : a.provenance;
    {
        std::ofstream prov(prov_path, std::ios::binary);
        if (!prov) throw ConfigError("cannot write " + prov_path);
        ingest::write_provenance(prov, merged.edges);
    }
    RunManifest m = start_manifest(cmdline, a.inputs);
    m.rows_in = rows_in;
    m.rows_out = merged.observations.size();
    write_manifest(g.out, m);

    info(g, "merge: " + std::to_string(rows_in) + " rows in, " +
                std::to_string(merged.observations.size()) + " out -> " + g.out);
    return kExitOk;
}

int run_validate(const GlobalOptions& g, const std::string& input) {
    CountryTable meta = load_meta(g, "validate");
    auto problems = scan_canonical_file(input, &meta);
    for (const auto& p : problems) {
        std::cout << input << ":" << p.line_number << ": " << p.message << '\n';
    }
    if (!problems.empty()) return kExitData;
    info(g, "validate: ok");
    return kExitOk;
}

struct StatsArgs {
    std::string input;
    std::string group_by = "region";
    int min_overlap = 20;
    std::string collapse = "mean";
    bool per_database_cells = false;
};

discord::GroupBy parse_group_by(const std::string& s) {
    if (s == "region") return discord::GroupBy::region;
    if (s == "income-group" || s == "income_group") return discord::GroupBy::income_group;
    throw ConfigError("bad --group-by '" + s + "' (region|income-group)");
}

discord::Collapse parse_collapse(const std::string& s) {
    if (s == "mean") return discord::Collapse::mean;
    if (s == "median") return discord::Collapse::median;
    throw ConfigError("bad --collapse '" + s + "' (mean|median)");
}

int run_stats(const GlobalOptions& g, const std::string& kind, const StatsArgs& a,
              const std::string& cmdline) {
    if (g.out.empty()) throw ConfigError("--out is required for stats");
    auto collection = read_canonical_file(a.input, nullptr);

    std::string text, json;
    std::uint64_t rows_out = 0;
    if (kind == "summary") {
        // Dataset counts run over the whole collection, unfiltered.
        auto summary = discord::dataset_summary(collection);
        text = report::render_summary(summary);
        json = report::json_summary(summary);
        rows_out = summary.rows.size() + 1;
    } else {
        auto filtered = discord::analysis_filter(collection, make_filter(g));
        if (kind == "variability") {
            CountryTable meta = load_meta(g, "stats variability");
            auto cells = discord::cell_variability(
                filtered,
                a.per_database_cells ? discord::CellValues::per_database_mean
                                     : discord::CellValues::all_observations,
                g.threads);
            auto group_by = parse_group_by(a.group_by);
            auto rep = discord::variability_report(cells, meta, group_by);
            text = report::render_variability(rep, group_by);
            json = report::json_variability(rep, group_by);
            rows_out = rep.groups.size() + 1;
        } else if (kind == "concordance") {
            auto cells = discord::pairwise_concordance(filtered, a.min_overlap,
                                                       parse_collapse(a.collapse), g.threads);
            text = report::render_concordance(cells);
            json = report::json_concordance(cells);
            rows_out = cells.size();
        } else if (kind == "gaps") {
            CountryTable meta = load_meta(g, "stats gaps");
            auto group_by = parse_group_by(a.group_by);
            auto rep = discord::income_consumption_gaps(filtered, meta, group_by,
                                                        parse_collapse(a.collapse));
            text = report::render_gaps(rep, group_by);
            json = report::json_gaps(rep, group_by);
            rows_out = rep.groups.size() + 1;
        } else {
            throw ConfigError("unknown stats kind '" + kind + "'");
        }
    }

    write_text_file(g.out, text);
    write_text_file(g.out + ".json", json);
    RunManifest m = start_manifest(cmdline, {a.input});
    m.rows_in = collection.size();
    m.rows_out = rows_out;
    write_manifest(g.out, m);
    info(g, "stats " + kind + " -> " + g.out);
    return kExitOk;
}

struct ExportArgs {
    std::string input;
    std::string country;
    std::string collapse = "mean";
};

int run_export(const GlobalOptions& g, const std::string& kind, const ExportArgs& a,
               const std::string& cmdline) {
    if (g.out.empty()) throw ConfigError("--out is required for export");
    auto collection = read_canonical_file(a.input, nullptr);

    std::string text;
    std::uint64_t rows_out = 0;
    if (kind == "sankey") {
        auto edges = ingest::provenance_edges(collection);
        text = report::render_sankey(edges);
        rows_out = edges.size();
    } else if (kind == "metric-map") {
        auto filtered = discord::analysis_filter(collection, make_filter(g));
        auto rows = discord::prevalent_metric(filtered);
        text = report::render_metric_map(rows);
        rows_out = rows.size();
    } else if (kind == "scatter-income-consumption") {
        auto filtered = discord::analysis_filter(collection, make_filter(g));
        auto pairs = discord::income_consumption_pairs(filtered, parse_collapse(a.collapse));
        text = report::render_scatter(pairs);
        rows_out = pairs.size();
    } else if (kind == "series") {
        if (a.country.empty()) throw ConfigError("export series requires --country");
        auto filtered = discord::analysis_filter(collection, make_filter(g));
        auto rows = discord::country_series(filtered, csv::to_upper(a.country));
        text = report::render_series(rows);
        rows_out = rows.size();
    } else {
        throw ConfigError("unknown export kind '" + kind + "'");
    }

    write_text_file(g.out, text);
    RunManifest m = start_manifest(cmdline, {a.input});
    m.rows_in = collection.size();
    m.rows_out = rows_out;
    write_manifest(g.out, m);
    info(g, "export " + kind + " -> " + g.out);
    return kExitOk;
}

struct GiniArgs {
    std::string input;
    std::string scale;
    std::string bottom;  // "pip" or "pip:<floor>"
    double top_code_cap = 0.0;
    bool top_code_set = false;
    bool correction = false;
};

std::optional<std::size_t> find_column(const csv::Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return i;
    }
    return std::nullopt;
}

double cell_number(const csv::Row& row, std::size_t col, const char* what) {
    const std::string raw = csv::trim(row.fields[col]);
    try {
        std::size_t pos = 0;
        double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(row.line_number) + ": bad " +
                        std::string(what) + " '" + raw + "'");
    }
}

int run_gini_micro(const GiniArgs& a) {
    csv::Table t = csv::read_file_strict(a.input);
    auto c_welfare = find_column(t, "welfare");
    if (!c_welfare) throw ConfigError(a.input + ": micro input needs a 'welfare' column");
    auto c_weight = find_column(t, "weight");
    auto c_size = find_column(t, "household_size");
    auto c_adults = find_column(t, "adults");
    auto c_children = find_column(t, "children");

    std::vector<kernel::MicroRecord> records;
    records.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        kernel::MicroRecord r;
        r.welfare = cell_number(row, *c_welfare, "welfare");
        if (c_weight && !csv::trim(row.fields[*c_weight]).empty()) {
            r.weight = cell_number(row, *c_weight, "weight");
        }
        if (c_size && !csv::trim(row.fields[*c_size]).empty()) {
            r.household_size = static_cast<int>(cell_number(row, *c_size, "household_size"));
        }
        if (c_adults && !csv::trim(row.fields[*c_adults]).empty()) {
            r.adults = static_cast<int>(cell_number(row, *c_adults, "adults"));
        }
        if (c_children && !csv::trim(row.fields[*c_children]).empty()) {
            r.children = static_cast<int>(cell_number(row, *c_children, "children"));
        }
        records.push_back(r);
    }

    // Transform order is fixed: bottom treatment on raw welfare, then
    // equivalence scale, then top-coding.
    if (!a.bottom.empty()) {
        double floor = kernel::kPipFloor;
        if (a.bottom.rfind("pip", 0) != 0 ||
            (a.bottom.size() > 3 && a.bottom[3] != ':')) {
            throw ConfigError("--bottom expects pip or pip:<floor>");
        }
        if (a.bottom.size() > 4) {
            try {
                std::size_t pos = 0;
                floor = std::stod(a.bottom.substr(4), &pos);
                if (pos != a.bottom.size() - 4) throw std::invalid_argument(a.bottom);
            } catch (const std::exception&) {
                throw ConfigError("bad --bottom floor '" + a.bottom.substr(4) + "'");
            }
        }
        std::vector<kernel::MicroRecord> kept;
        kept.reserve(records.size());
        for (auto r : records) {
            if (r.welfare < 0.0) continue;
            if (r.welfare < floor) r.welfare = floor;
            kept.push_back(r);
        }
        records = std::move(kept);
    }

    std::vector<double> values, weights;
    values.reserve(records.size());
    weights.reserve(records.size());
    if (!a.scale.empty()) {
        auto scale = parse_eq_scale(a.scale);
        if (!scale) throw ConfigError("unknown --scale '" + a.scale + "'");
        for (const auto& r : records) {
            values.push_back(kernel::equivalise(r, *scale));
            // Equivalised welfare is attributed to every household member.
            weights.push_back(r.weight * static_cast<double>(r.household_size));
        }
    } else {
        for (const auto& r : records) {
            values.push_back(r.welfare);
            weights.push_back(r.weight);
        }
    }

    if (a.top_code_set) {
        values = kernel::top_code(values, a.top_code_cap);
    }

    kernel::GiniOptions opts;
    opts.small_sample_correction = a.correction;
    double g = kernel::gini_microdata(values, weights, opts);
    std::cout << csv::format_fixed(g, 4) << '\n';
    return kExitOk;
}

int run_gini_lorenz(const GiniArgs& a) {
    csv::Table t = csv::read_file_strict(a.input);
    std::vector<kernel::LorenzPoint> points;
    if (find_column(t, "p") && find_column(t, "L")) {
        auto cp = *find_column(t, "p");
        auto cl = *find_column(t, "L");
        for (const auto& row : t.rows) {
            points.push_back({cell_number(row, cp, "p"), cell_number(row, cl, "L")});
        }
    } else if (auto cs = find_column(t, "share")) {
        // Percentage shares of total welfare for equal-population groups.
        std::vector<double> shares;
        for (const auto& row : t.rows) shares.push_back(cell_number(row, *cs, "share"));
        double cum = 0.0;
        for (std::size_t i = 0; i < shares.size(); ++i) {
            cum += shares[i] / 100.0;
            points.push_back(
                {static_cast<double>(i + 1) / static_cast<double>(shares.size()), cum});
        }
    } else {
        throw ConfigError(a.input + ": lorenz input needs columns p,L or a share column");
    }
    double g = kernel::gini_lorenz(points);
    std::cout << csv::format_fixed(g, 4) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unified Gini collection toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--out", g.out, "output file path");
    app.add_option("--meta", g.meta,
                   "country reference table (iso3,name,region7,income_group,aliases)");
    app.add_option("--filter-coverage", g.filter_coverage,
                   "area coverage kept by the analysis filter, or 'any'");
    app.add_option("--filter-subgroup", g.filter_subgroup,
                   "subgroup kept by the analysis filter, or 'any'");
    app.add_flag("--quiet", g.quiet, "suppress progress messages");
    app.add_option("--threads", g.threads, "worker threads for cell/pair computations")
        ->check(CLI::PositiveNumber);

    IngestArgs ingest_args;
    auto* cmd_ingest = app.add_subcommand("ingest", "parse one source export into canonical form");
    cmd_ingest->add_option("source", ingest_args.source, "source database identifier")->required();
    cmd_ingest->add_option("--mapping", ingest_args.mapping, "mapping config file")->required();
    cmd_ingest->add_option("--input", ingest_args.input, "source export (delimited text)")
        ->required();

    MergeArgs merge_args;
    auto* cmd_merge = app.add_subcommand("merge", "merge canonical files into one collection");
    cmd_merge->add_option("inputs", merge_args.inputs, "canonical observation files")->required();
    cmd_merge->add_option("--provenance", merge_args.provenance,
                          "provenance edge list path (default <out>.provenance.csv)");

    std::string validate_input;
    auto* cmd_validate = app.add_subcommand("validate", "validate a canonical file");
    cmd_validate->add_option("--input", validate_input, "canonical observation file")->required();

    StatsArgs stats_args;
    auto* cmd_stats = app.add_subcommand("stats", "discordance statistics reports");
    cmd_stats->require_subcommand(1);
    static const char* stats_kind_names[] = {"variability", "concordance", "gaps", "summary"};
    std::vector<CLI::App*> stats_kinds;
    for (const char* kind : stats_kind_names) {
        auto* sub = cmd_stats->add_subcommand(kind);
        sub->fallthrough();
        stats_kinds.push_back(sub);
    }
    cmd_stats->add_option("--input", stats_args.input, "canonical observation file")->required();
    cmd_stats->add_option("--group-by", stats_args.group_by, "region|income-group");
    cmd_stats->add_option("--min-overlap", stats_args.min_overlap,
                          "overlap threshold for concordance cells");
    cmd_stats->add_option("--collapse", stats_args.collapse,
                          "per-database cell collapse rule (mean|median)");
    cmd_stats->add_flag("--collapse-db", stats_args.per_database_cells,
                        "variability over per-database means instead of all observations");

    ExportArgs export_args;
    auto* cmd_export = app.add_subcommand("export", "figure-ready data files");
    cmd_export->require_subcommand(1);
    static const char* export_kind_names[] = {"sankey", "metric-map",
                                              "scatter-income-consumption", "series"};
    std::vector<CLI::App*> export_kinds;
    for (const char* kind : export_kind_names) {
        auto* sub = cmd_export->add_subcommand(kind);
        sub->fallthrough();
        export_kinds.push_back(sub);
    }
    cmd_export->add_option("--input", export_args.input, "canonical observation file")
        ->required();
    cmd_export->add_option("--country", export_args.country, "iso3 for series export");
    cmd_export->add_option("--collapse", export_args.collapse,
                           "per-database cell collapse rule (mean|median)");

    GiniArgs gini_args;
    auto* cmd_gini = app.add_subcommand("gini", "compute one Gini from microdata or Lorenz data");
    cmd_gini->require_subcommand(1);
    auto* gini_micro = cmd_gini->add_subcommand("micro");
    gini_micro->fallthrough();
    auto* gini_lorenz = cmd_gini->add_subcommand("lorenz");
    gini_lorenz->fallthrough();
    cmd_gini->add_option("--input", gini_args.input, "input file")->required();
    cmd_gini->add_option("--scale", gini_args.scale,
                         "equivalence scale (per_capita|square_root|oecd_modified)");
    cmd_gini->add_option("--bottom", gini_args.bottom, "bottom treatment: pip or pip:<floor>");
    auto* topt = cmd_gini->add_option("--top-code", gini_args.top_code_cap, "top-coding cap");
    cmd_gini->add_flag("--small-sample-correction", gini_args.correction,
                       "multiply by n/(n-1)");

    const std::string cmdline = join_args(argc, argv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    gini_args.top_code_set = topt->count() > 0;

    try {
        if (*cmd_ingest) return run_ingest(g, ingest_args, cmdline);
        if (*cmd_merge) return run_merge(g, merge_args, cmdline);
        if (*cmd_validate) return run_validate(g, validate_input);
        if (*cmd_stats) {
            for (std::size_t i = 0; i < stats_kinds.size(); ++i) {
                if (stats_kinds[i]->parsed()) {
                    return run_stats(g, stats_kind_names[i], stats_args, cmdline);
                }
            }
        }
        if (*cmd_export) {
            for (std::size_t i = 0; i < export_kinds.size(); ++i) {
                if (export_kinds[i]->parsed()) {
                    return run_export(g, export_kind_names[i], export_args, cmdline);
                }
            }
        }
        if (*cmd_gini) {
            if (gini_micro->parsed()) return run_gini_micro(gini_args);
            if (gini_lorenz->parsed()) return run_gini_lorenz(gini_args);
        }
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
