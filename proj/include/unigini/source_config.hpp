#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unigini/vocab.hpp"

namespace unigini::ingest {

// Declarative per-source ingestion rules. Encodes each database's
// characteristics as data: how its export columns map onto the canonical
// schema, which scale its Gini uses, what the source-specific vocabulary
// means, and which canonical values apply when a column is absent.
//
// File format: plain-text key-value lines with sections
//   (top level)        source_db, gini_scale, allow_low_gini
//   [columns]          canonical field = source column name
//   [values.<field>]   source token = canonical enum member
//   [defaults]         canonical field = canonical value
// Full-line comments start with '#'.
struct SourceConfig {
    enum class GiniScale { unit_interval, percent };

    SourceDb source_db = SourceDb::UNUWIDER;
    GiniScale gini_scale = GiniScale::percent;
    // Permits gini_pp <= 1.0 from a percent-scale source; without it such
    // rows are rejected as suspected mislabeled unit-interval data.
    bool allow_low_gini = false;
    std::map<std::string, std::string> column_map;                   // field -> column
    std::map<std::string, std::map<std::string, std::string>> value_map;  // field -> lower(token) -> canonical
    std::map<std::string, std::string> defaults;                     // field -> canonical value
};

// Canonical field names accepted in configs, in canonical column order.
const std::vector<std::string>& canonical_fields();

// Parses and fully validates a config. `cli_source` is the source named
// on the command line; it must agree with the file when both are given,
// and fills in source_db when the file omits it. Throws ConfigError with
// a line number on parse errors, unknown canonical field names, invalid
// enum targets, or a missing mandatory mapping.
SourceConfig load_source_config(const std::filesystem::path& path,
                                std::optional<SourceDb> cli_source = std::nullopt);

}  // namespace unigini::ingest
