#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "unigini/csv.hpp"
#include "unigini/observation.hpp"
#include "unigini/source_config.hpp"

namespace unigini::ingest {

struct RowReject {
    std::size_t row_number = 0;  // physical line in the source export
    std::string reason;
};

struct ParseResult {
    std::vector<GiniObservation> accepted;
    std::vector<RowReject> rejected;  // accepted + rejected == input rows
};

// One edge of the provenance graph: where observations came from and
// which database they landed in.
struct ProvenanceEdge {
    std::string origin;  // provenance_origin token
    SourceDb destination = SourceDb::UNUWIDER;
    std::uint64_t weight = 0;

    bool operator==(const ProvenanceEdge&) const = default;
};

struct MergeResult {
    std::vector<GiniObservation> observations;
    std::vector<ProvenanceEdge> edges;  // sorted by (origin, destination)
};

// Turns one source export into validated observations. Rejected rows
// carry their line number and the first reason; they are data, never
// silently dropped. Throws ConfigError when a mapped column is missing
// from the header (whole-file error).
ParseResult parse_export(const SourceConfig& config, const csv::Table& rows,
                         const CountryTable& meta);

// Resolves a country token to canonical iso3, or empty optional.
// Thin wrapper over CountryTable::normalize, kept for symmetry with the
// CLI surface.
std::optional<std::string> normalize_country(std::string_view token,
                                             const CountryTable& meta);

// Sorts into canonical order and collapses rows identical on every field
// except survey_name (keeping the smallest non-empty name, so the result
// is independent of input order). Rows differing in gini_pp or any
// descriptor are all kept.
std::vector<GiniObservation> dedup(std::vector<GiniObservation> observations);

// Concatenate + dedup + sort, with provenance edges aggregated over the
// unified collection: weight = observation count per (origin, destination).
MergeResult merge(std::span<const std::vector<GiniObservation>> collections);

std::vector<ProvenanceEdge> provenance_edges(std::span<const GiniObservation> obs);

void write_rejects(std::ostream& out, std::span<const RowReject> rejects);
void write_provenance(std::ostream& out, std::span<const ProvenanceEdge> edges);

}  // namespace unigini::ingest
