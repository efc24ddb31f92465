#include "unigini/source_config.hpp"

#include <fstream>

#include "unigini/csv.hpp"
#include "unigini/errors.hpp"

namespace unigini::ingest {

const std::vector<std::string>& canonical_fields() {
    static const std::vector<std::string> fields = {
        "country", "year", "gini", "welfare_metric", "metric_type",
        "reference_unit", "equivalence_scale", "area_coverage", "subgroup",
        "provenance_origin", "survey_name",
    };
    return fields;
}

namespace {

bool is_canonical_field(const std::string& name) {
    for (const auto& f : canonical_fields()) {
        if (f == name) return true;
    }
    return false;
}

bool is_enum_field(const std::string& name) {
    return name == "welfare_metric" || name == "metric_type" ||
           name == "reference_unit" || name == "equivalence_scale" ||
           name == "area_coverage" || name == "subgroup" ||
           name == "provenance_origin";
}

bool valid_enum_value(const std::string& field, const std::string& value) {
    if (field == "welfare_metric") return parse_welfare_metric(value).has_value();
    if (field == "metric_type") return parse_metric_type(value).has_value();
    if (field == "reference_unit") return parse_reference_unit(value).has_value();
    if (field == "equivalence_scale") return parse_eq_scale(value).has_value();
    if (field == "area_coverage") return parse_area_coverage(value).has_value();
    if (field == "subgroup") return parse_subgroup(value).has_value();
    if (field == "provenance_origin") return parse_provenance_origin(value).has_value();
    return true;  // country/year/gini/survey_name defaults are free text
}

}  // namespace

SourceConfig load_source_config(const std::filesystem::path& path,
                                std::optional<SourceDb> cli_source) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mapping config " + path.string());

    SourceConfig cfg;
    bool saw_source_db = false;
    bool saw_gini_scale = false;

    enum class Section { global, columns, values, defaults };
    Section section = Section::global;
    std::string values_field;

    auto fail = [&](std::size_t line_no, const std::string& why) -> void {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + why);
    };

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = csv::trim(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            std::string name = csv::trim(line.substr(1, line.size() - 2));
            if (name == "columns") {
                section = Section::columns;
            } else if (name == "defaults") {
                section = Section::defaults;
            } else if (name.rfind("values.", 0) == 0) {
                values_field = name.substr(7);
                if (!is_enum_field(values_field)) {
                    fail(line_no, "value map for non-vocabulary field '" + values_field + "'");
                }
                section = Section::values;
            } else {
                fail(line_no, "unknown section [" + name + "]");
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        std::string key = csv::trim(line.substr(0, eq));
        std::string value = csv::trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");

        switch (section) {
            case Section::global: {
                if (key == "source_db") {
                    auto db = parse_source_db(value);
                    if (!db) fail(line_no, "unknown source_db '" + value + "'");
                    cfg.source_db = *db;
                    saw_source_db = true;
                } else if (key == "gini_scale") {
                    if (value == "unit_interval") {
                        cfg.gini_scale = SourceConfig::GiniScale::unit_interval;
                    } else if (value == "percent") {
                        cfg.gini_scale = SourceConfig::GiniScale::percent;
                    } else {
                        fail(line_no, "gini_scale must be unit_interval or percent");
                    }
                    saw_gini_scale = true;
                } else if (key == "allow_low_gini") {
                    if (value == "true") {
                        cfg.allow_low_gini = true;
                    } else if (value == "false") {
                        cfg.allow_low_gini = false;
                    } else {
                        fail(line_no, "allow_low_gini must be true or false");
                    }
                } else {
                    fail(line_no, "unknown key '" + key + "'");
                }
                break;
            }
            case Section::columns: {
                if (!is_canonical_field(key)) {
                    fail(line_no, "unknown canonical field '" + key + "'");
                }
                if (value.empty()) fail(line_no, "empty column name for '" + key + "'");
                cfg.column_map[key] = value;
                break;
            }
            case Section::values: {
                if (!valid_enum_value(values_field, value)) {
                    fail(line_no, "'" + value + "' is not a member of " + values_field);
                }
                cfg.value_map[values_field][csv::to_lower(key)] = value;
                break;
            }
            case Section::defaults: {
                if (!is_canonical_field(key)) {
                    fail(line_no, "unknown canonical field '" + key + "'");
                }
                if (is_enum_field(key) && !valid_enum_value(key, value)) {
                    fail(line_no, "'" + value + "' is not a member of " + key);
                }
                cfg.defaults[key] = value;
                break;
            }
        }
    }

    if (cli_source) {
        if (saw_source_db && cfg.source_db != *cli_source) {
            throw ConfigError(path.string() + ": config source_db " +
                              std::string(to_token(cfg.source_db)) +
                              " does not match requested source " +
                              std::string(to_token(*cli_source)));
        }
        cfg.source_db = *cli_source;
        saw_source_db = true;
    }
    if (!saw_source_db) {
        throw ConfigError(path.string() + ": source_db not set (config or command line)");
    }
    if (!saw_gini_scale) {
        throw ConfigError(path.string() + ": gini_scale not set");
    }
    for (const char* mandatory : {"country", "year", "gini"}) {
        if (!cfg.column_map.count(mandatory) && !cfg.defaults.count(mandatory)) {
            throw ConfigError(path.string() + ": " + mandatory +
                              " unmapped (no column mapping and no default)");
        }
    }
    return cfg;
}

}  // namespace unigini::ingest
