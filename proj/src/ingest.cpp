#include "unigini/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>

#include "unigini/errors.hpp"

namespace unigini::ingest {

namespace {

// Rounds to the canonical 4-decimal precision so in-memory values match
// what the canonical file round-trips.
double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

std::optional<double> parse_number(const std::string& raw) {
    std::string t = csv::trim(raw);
    if (t.empty()) return std::nullopt;
    const char* begin = t.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + t.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Survey years spanning two calendar years ("2010/11", "2010-2011") are
// assigned the later year.
std::optional<int> parse_survey_year(const std::string& raw) {
    std::string t = csv::trim(raw);
    if (t.empty()) return std::nullopt;
    std::size_t sep = t.find_first_of("/-");
    std::string first = sep == std::string::npos ? t : t.substr(0, sep);
    std::string second = sep == std::string::npos ? "" : t.substr(sep + 1);
    auto to_int = [](const std::string& s) -> std::optional<int> {
        if (s.empty() || s.size() > 4) return std::nullopt;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
        }
        return std::atoi(s.c_str());
    };
    auto y1 = to_int(first);
    if (!y1 || first.size() != 4) return std::nullopt;
    if (second.empty()) {
        if (sep != std::string::npos) return std::nullopt;
        return y1;
    }
    auto y2 = to_int(second);
    if (!y2) return std::nullopt;
    if (second.size() == 4) return *y2;
    if (second.size() == 2) {
        int century = (*y1 / 100) * 100;
        int later = century + *y2;
        if (later < *y1) later += 100;  // 1999/00 -> 2000
        return later;
    }
    return std::nullopt;
}

struct FieldReader {
    const SourceConfig& config;
    const csv::Table& table;
    std::vector<int> column_index;  // per canonical field, -1 = unmapped

    FieldReader(const SourceConfig& cfg, const csv::Table& t) : config(cfg), table(t) {
        const auto& fields = canonical_fields();
        column_index.assign(fields.size(), -1);
        for (std::size_t f = 0; f < fields.size(); ++f) {
            auto it = cfg.column_map.find(fields[f]);
            if (it == cfg.column_map.end()) continue;
            auto col = std::find(t.header.begin(), t.header.end(), it->second);
            if (col == t.header.end()) {
                throw ConfigError("mapped column '" + it->second + "' for field '" +
                                  fields[f] + "' missing from input header");
            }
            column_index[f] = static_cast<int>(col - t.header.begin());
        }
    }

    // Raw cell for a canonical field: mapped column first, then the
    // configured default. nullopt = nothing provided.
    std::optional<std::string> raw(std::size_t field_idx,
                                   const std::vector<std::string>& cells) const {
        int col = column_index[field_idx];
        if (col >= 0 && static_cast<std::size_t>(col) < cells.size()) {
            std::string v = csv::trim(cells[static_cast<std::size_t>(col)]);
            if (!v.empty()) return v;
        }
        const auto& fields = canonical_fields();
        auto it = config.defaults.find(fields[field_idx]);
        if (it != config.defaults.end()) return it->second;
        return std::nullopt;
    }
};

std::size_t field_index(const std::string& name) {
    const auto& fields = canonical_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == name) return i;
    }
    throw ConfigError("internal: unknown canonical field " + name);
}

// Maps a source token through the per-field value map, falling back to a
// direct vocabulary parse.
template <typename Parse>
auto map_enum(const SourceConfig& cfg, const std::string& field, const std::string& token,
              Parse parse) -> decltype(parse(std::string_view{})) {
    auto vm = cfg.value_map.find(field);
    if (vm != cfg.value_map.end()) {
        auto hit = vm->second.find(csv::to_lower(csv::trim(token)));
        if (hit != vm->second.end()) return parse(hit->second);
    }
    return parse(csv::trim(token));
}

}  // namespace

std::optional<std::string> normalize_country(std::string_view token,
                                             const CountryTable& meta) {
    return meta.normalize(token);
}

ParseResult parse_export(const SourceConfig& config, const csv::Table& table,
                         const CountryTable& meta) {
    FieldReader reader(config, table);
    ParseResult result;

    const std::size_t f_country = field_index("country");
    const std::size_t f_year = field_index("year");
    const std::size_t f_gini = field_index("gini");
    const std::size_t f_welfare = field_index("welfare_metric");
    const std::size_t f_metric_type = field_index("metric_type");
    const std::size_t f_reference = field_index("reference_unit");
    const std::size_t f_eq_scale = field_index("equivalence_scale");
    const std::size_t f_area = field_index("area_coverage");
    const std::size_t f_subgroup = field_index("subgroup");
    const std::size_t f_provenance = field_index("provenance_origin");
    const std::size_t f_survey = field_index("survey_name");

    for (const auto& row : table.rows) {
        auto reject = [&](const std::string& why) {
            result.rejected.push_back({row.line_number, why});
        };
        if (row.error) {
            reject("malformed row: " + *row.error);
            continue;
        }
        if (row.fields.size() != table.header.size()) {
            reject("expected " + std::to_string(table.header.size()) + " fields, got " +
                   std::to_string(row.fields.size()));
            continue;
        }

        GiniObservation obs;
        obs.source_db = config.source_db;

        auto country_raw = reader.raw(f_country, row.fields);
        if (!country_raw) {
            reject("country missing");
            continue;
        }
        auto iso3 = meta.normalize(*country_raw);
        if (!iso3) {
            reject("unknown country '" + *country_raw + "'");
            continue;
        }
        obs.country_iso3 = *iso3;

        auto year_raw = reader.raw(f_year, row.fields);
        auto year = year_raw ? parse_survey_year(*year_raw) : std::nullopt;
        if (!year) {
            reject(year_raw ? "unparseable year '" + *year_raw + "'" : "year missing");
            continue;
        }
        obs.year = *year;

        auto gini_raw = reader.raw(f_gini, row.fields);
        auto gini = gini_raw ? parse_number(*gini_raw) : std::nullopt;
        if (!gini) {
            reject(gini_raw ? "unparseable gini '" + *gini_raw + "'" : "gini missing");
            continue;
        }
        double gini_pp = *gini;
        if (config.gini_scale == SourceConfig::GiniScale::unit_interval) {
            gini_pp *= 100.0;
        } else if (gini_pp >= 0.0 && gini_pp <= 1.0 && !config.allow_low_gini) {
            // A percent-scale source emitting values in [0,1] almost always
            // means mislabeled unit-interval data.
            reject("gini_pp <= 1.0 from percent-scale source (set allow_low_gini to keep)");
            continue;
        }
        obs.gini_pp = round4(gini_pp);

        bool enum_ok = true;
        auto read_enum = [&](std::size_t field_idx, const std::string& field_name,
                             auto parse, auto fallback) {
            using Result = decltype(parse(std::string_view{}));
            auto raw = reader.raw(field_idx, row.fields);
            if (!raw) return Result(fallback);
            auto mapped = map_enum(config, field_name, *raw, parse);
            if (!mapped) {
                reject("unmapped " + field_name + " value '" + *raw + "'");
                enum_ok = false;
            }
            return mapped;
        };

        auto welfare = read_enum(f_welfare, "welfare_metric", parse_welfare_metric,
                                 WelfareMetric::unknown);
        if (!enum_ok) continue;
        obs.welfare_metric = *welfare;

        auto metric_raw = reader.raw(f_metric_type, row.fields);
        if (metric_raw) {
            auto mt = map_enum(config, "metric_type", *metric_raw, parse_metric_type);
            if (!mt) {
                reject("unmapped metric_type value '" + *metric_raw + "'");
                continue;
            }
            obs.metric_type = *mt;
        } else if (obs.welfare_metric == WelfareMetric::consumption ||
                   obs.welfare_metric == WelfareMetric::expenditure) {
            // Derivable: gross/net distinctions do not apply to consumption.
            obs.metric_type = MetricType::not_applicable;
        } else {
            obs.metric_type = MetricType::unknown;
        }

        auto reference = read_enum(f_reference, "reference_unit", parse_reference_unit,
                                   ReferenceUnit::unknown);
        if (!enum_ok) continue;
        obs.reference_unit = *reference;

        auto eq_scale = read_enum(f_eq_scale, "equivalence_scale", parse_eq_scale,
                                  EqScale::unknown);
        if (!enum_ok) continue;
        obs.equivalence_scale = *eq_scale;

        auto area = read_enum(f_area, "area_coverage", parse_area_coverage,
                              AreaCoverage::unknown);
        if (!enum_ok) continue;
        obs.area_coverage = *area;

        auto subgroup = read_enum(f_subgroup, "subgroup", parse_subgroup, Subgroup::overall);
        if (!enum_ok) continue;
        obs.subgroup = *subgroup;

        auto provenance = read_enum(f_provenance, "provenance_origin",
                                    parse_provenance_origin, ProvenanceOrigin::unknown);
        if (!enum_ok) continue;
        obs.provenance_origin = *provenance;

        auto survey = reader.raw(f_survey, row.fields);
        obs.survey_name = survey.value_or("");

        auto violations = validate_observation(obs, &meta);
        if (!violations.empty()) {
            std::string joined = violations.front();
            for (std::size_t i = 1; i < violations.size(); ++i) joined += "; " + violations[i];
            reject(joined);
            continue;
        }
        result.accepted.push_back(std::move(obs));
    }
    return result;
}

std::vector<GiniObservation> dedup(std::vector<GiniObservation> observations) {
    std::sort(observations.begin(), observations.end(), canon_less);
    std::vector<GiniObservation> out;
    out.reserve(observations.size());
    for (auto& obs : observations) {
        if (!out.empty() && same_dedup_key(out.back(), obs)) {
            // canon_less orders empty survey names first within a group;
            // prefer the first non-empty one.
            if (out.back().survey_name.empty() && !obs.survey_name.empty()) {
                out.back().survey_name = std::move(obs.survey_name);
            }
            continue;
        }
        out.push_back(std::move(obs));
    }
    return out;
}

std::vector<ProvenanceEdge> provenance_edges(std::span<const GiniObservation> obs) {
    std::map<std::pair<std::string, SourceDb>, std::uint64_t> counts;
    for (const auto& o : obs) {
        counts[{std::string(to_token(o.provenance_origin)), o.source_db}] += 1;
    }
    std::vector<ProvenanceEdge> edges;
    edges.reserve(counts.size());
    for (const auto& [key, weight] : counts) {
        edges.push_back({key.first, key.second, weight});
    }
    std::sort(edges.begin(), edges.end(), [](const ProvenanceEdge& a, const ProvenanceEdge& b) {
        if (a.origin != b.origin) return a.origin < b.origin;
        return to_token(a.destination) < to_token(b.destination);
    });
    return edges;
}

MergeResult merge(std::span<const std::vector<GiniObservation>> collections) {
    std::vector<GiniObservation> all;
    std::size_t total = 0;
    for (const auto& c : collections) total += c.size();
    all.reserve(total);
    for (const auto& c : collections) all.insert(all.end(), c.begin(), c.end());

    MergeResult result;
    result.observations = dedup(std::move(all));
    result.edges = provenance_edges(result.observations);
    return result;
}

void write_rejects(std::ostream& out, std::span<const RowReject> rejects) {
    out << "row_number,reason\n";
    std::vector<std::string> fields(2);
    for (const auto& r : rejects) {
        fields[0] = std::to_string(r.row_number);
        fields[1] = r.reason;
        csv::write_row(out, fields);
    }
}

void write_provenance(std::ostream& out, std::span<const ProvenanceEdge> edges) {
    out << "origin,destination,weight\n";
    std::vector<std::string> fields(3);
    for (const auto& e : edges) {
        fields[0] = e.origin;
        fields[1] = to_token(e.destination);
        fields[2] = std::to_string(e.weight);
        csv::write_row(out, fields);
    }
}

}  // namespace unigini::ingest
