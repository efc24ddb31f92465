#include "unigini/observation.hpp"

#include <cctype>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <tuple>

#include "unigini/csv.hpp"
#include "unigini/errors.hpp"

namespace unigini {

namespace {

bool is_upper_alpha3(std::string_view s) {
    if (s.size() != 3) return false;
    for (char c : s) {
        if (c < 'A' || c > 'Z') return false;
    }
    return true;
}

auto sort_key(const GiniObservation& o) {
    return std::tuple(to_token(o.source_db), std::string_view(o.country_iso3), o.year,
                      to_token(o.welfare_metric), to_token(o.metric_type),
                      to_token(o.reference_unit), to_token(o.area_coverage),
                      to_token(o.subgroup),
                      // remaining fields as tiebreakers, so the order is total
                      o.gini_pp, to_token(o.equivalence_scale),
                      to_token(o.provenance_origin), std::string_view(o.survey_name));
}

}  // namespace

bool canon_less(const GiniObservation& a, const GiniObservation& b) {
    return sort_key(a) < sort_key(b);
}

bool same_dedup_key(const GiniObservation& a, const GiniObservation& b) {
    return a.source_db == b.source_db && a.country_iso3 == b.country_iso3 &&
           a.year == b.year && a.gini_pp == b.gini_pp &&
           a.welfare_metric == b.welfare_metric && a.metric_type == b.metric_type &&
           a.reference_unit == b.reference_unit &&
           a.equivalence_scale == b.equivalence_scale &&
           a.area_coverage == b.area_coverage && a.subgroup == b.subgroup &&
           a.provenance_origin == b.provenance_origin;
}

int current_calendar_year() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    return utc.tm_year + 1900;
}

std::vector<std::string> validate_observation(const GiniObservation& obs,
                                              const CountryTable* meta) {
    std::vector<std::string> violations;
    if (!(obs.gini_pp >= 0.0 && obs.gini_pp <= 100.0)) {
        violations.push_back("gini_pp out of [0,100]");
    }
    const int max_year = current_calendar_year();
    if (obs.year < 1800 || obs.year > max_year) {
        violations.push_back("year out of [1800," + std::to_string(max_year) + "]");
    }
    if (!is_upper_alpha3(obs.country_iso3)) {
        violations.push_back("country_iso3 must match [A-Z]{3}");
    } else if (meta && meta->find(obs.country_iso3) == nullptr) {
        violations.push_back("unknown country");
    }
    if ((obs.welfare_metric == WelfareMetric::consumption ||
         obs.welfare_metric == WelfareMetric::expenditure) &&
        obs.metric_type != MetricType::not_applicable) {
        violations.push_back("metric_type must be not_applicable");
    }
    if (obs.reference_unit == ReferenceUnit::tax_unit && obs.source_db != SourceDb::WID) {
        violations.push_back("tax_unit reference only valid for WID");
    }
    return violations;
}

const char* const kCanonicalHeader =
    "source_db,country_iso3,year,gini_pp,welfare_metric,metric_type,reference_unit,"
    "equivalence_scale,area_coverage,subgroup,provenance_origin,survey_name";

void write_canonical(std::ostream& out, std::span<const GiniObservation> obs) {
    out << kCanonicalHeader << '\n';
    std::vector<std::string> fields(12);
    for (const auto& o : obs) {
        fields[0] = to_token(o.source_db);
        fields[1] = o.country_iso3;
        fields[2] = std::to_string(o.year);
        fields[3] = csv::format_fixed(o.gini_pp, 4);
        fields[4] = to_token(o.welfare_metric);
        fields[5] = to_token(o.metric_type);
        fields[6] = to_token(o.reference_unit);
        fields[7] = to_token(o.equivalence_scale);
        fields[8] = to_token(o.area_coverage);
        fields[9] = to_token(o.subgroup);
        fields[10] = to_token(o.provenance_origin);
        fields[11] = o.survey_name;
        csv::write_row(out, fields);
    }
}

void write_canonical_file(const std::filesystem::path& path,
                          std::span<const GiniObservation> obs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    write_canonical(out, obs);
    if (!out.flush()) throw ConfigError("write failed: " + path.string());
}

namespace {

void check_canonical_header(const csv::Table& t, const std::filesystem::path& path) {
    std::string joined;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (i) joined.push_back(',');
        joined += t.header[i];
    }
    if (joined != kCanonicalHeader) {
        throw DataError(path.string() + ": not a canonical observation file (bad header)");
    }
}

// Parses one canonical row into obs; returns the first structural
// problem, or nullopt on success (invariants are validated separately).
std::optional<std::string> parse_canonical_row(const csv::Row& row, GiniObservation& o) {
    if (row.error) return *row.error;
    if (row.fields.size() != 12) return "expected 12 fields";
    auto db = parse_source_db(row.fields[0]);
    if (!db) return "unknown source_db '" + row.fields[0] + "'";
    o.source_db = *db;
    o.country_iso3 = row.fields[1];
    try {
        std::size_t pos = 0;
        o.year = std::stoi(row.fields[2], &pos);
        if (pos != row.fields[2].size()) return "bad year '" + row.fields[2] + "'";
    } catch (const std::exception&) {
        return "bad year '" + row.fields[2] + "'";
    }
    try {
        std::size_t pos = 0;
        o.gini_pp = std::stod(row.fields[3], &pos);
        if (pos != row.fields[3].size() || !std::isfinite(o.gini_pp)) {
            return "bad gini_pp '" + row.fields[3] + "'";
        }
    } catch (const std::exception&) {
        return "bad gini_pp '" + row.fields[3] + "'";
    }
    auto wm = parse_welfare_metric(row.fields[4]);
    auto mt = parse_metric_type(row.fields[5]);
    auto ru = parse_reference_unit(row.fields[6]);
    auto es = parse_eq_scale(row.fields[7]);
    auto ac = parse_area_coverage(row.fields[8]);
    auto sg = parse_subgroup(row.fields[9]);
    auto po = parse_provenance_origin(row.fields[10]);
    if (!wm) return "unknown welfare_metric '" + row.fields[4] + "'";
    if (!mt) return "unknown metric_type '" + row.fields[5] + "'";
    if (!ru) return "unknown reference_unit '" + row.fields[6] + "'";
    if (!es) return "unknown equivalence_scale '" + row.fields[7] + "'";
    if (!ac) return "unknown area_coverage '" + row.fields[8] + "'";
    if (!sg) return "unknown subgroup '" + row.fields[9] + "'";
    if (!po) return "unknown provenance_origin '" + row.fields[10] + "'";
    o.welfare_metric = *wm;
    o.metric_type = *mt;
    o.reference_unit = *ru;
    o.equivalence_scale = *es;
    o.area_coverage = *ac;
    o.subgroup = *sg;
    o.provenance_origin = *po;
    o.survey_name = row.fields[11];
    return std::nullopt;
}

}  // namespace

std::vector<GiniObservation> read_canonical_file(const std::filesystem::path& path,
                                                 const CountryTable* meta) {
    csv::Table t = csv::read_file(path);
    check_canonical_header(t, path);
    std::vector<GiniObservation> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        auto fail = [&](const std::string& why) -> void {
            throw DataError(path.string() + ":" + std::to_string(row.line_number) + ": " + why);
        };
        GiniObservation o;
        if (auto err = parse_canonical_row(row, o)) fail(*err);
        auto violations = validate_observation(o, meta);
        if (!violations.empty()) fail(violations.front());
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<CanonicalReadError> scan_canonical_file(const std::filesystem::path& path,
                                                    const CountryTable* meta) {
    csv::Table t = csv::read_file(path);
    check_canonical_header(t, path);
    std::vector<CanonicalReadError> problems;
    for (const auto& row : t.rows) {
        GiniObservation o;
        if (auto err = parse_canonical_row(row, o)) {
            problems.push_back({row.line_number, *err});
            continue;
        }
        for (auto& violation : validate_observation(o, meta)) {
            problems.push_back({row.line_number, std::move(violation)});
        }
    }
    return problems;
}

}  // namespace unigini
