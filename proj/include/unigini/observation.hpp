#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "unigini/country.hpp"
#include "unigini/vocab.hpp"

namespace unigini {

// One harmonized Gini data point. Immutable value object; gini_pp is
// stored on the 0-100 percentage-point scale, rounded to the canonical
// 4-decimal precision at ingestion.
struct GiniObservation {
    SourceDb source_db = SourceDb::UNUWIDER;
    std::string country_iso3;
    int year = 0;
    double gini_pp = 0.0;
    WelfareMetric welfare_metric = WelfareMetric::unknown;
    MetricType metric_type = MetricType::unknown;
    ReferenceUnit reference_unit = ReferenceUnit::unknown;
    EqScale equivalence_scale = EqScale::unknown;
    AreaCoverage area_coverage = AreaCoverage::unknown;
    Subgroup subgroup = Subgroup::overall;
    ProvenanceOrigin provenance_origin = ProvenanceOrigin::unknown;
    std::string survey_name;  // empty = absent

    bool operator==(const GiniObservation&) const = default;
};

// Canonical file ordering: (source_db, country_iso3, year, welfare_metric,
// metric_type, reference_unit, area_coverage, subgroup), enum fields
// compared by token string, then the remaining fields as tiebreakers so
// that sorting is total and merges are permutation-independent.
bool canon_less(const GiniObservation& a, const GiniObservation& b);

// Identity for deduplication: every field except survey_name.
bool same_dedup_key(const GiniObservation& a, const GiniObservation& b);

int current_calendar_year();

// Returns every violated invariant, not only the first; empty means the
// observation is storable. Violations are data, not faults. Pass a null
// table to skip the reference-table existence check (the iso3 shape is
// still verified).
std::vector<std::string> validate_observation(const GiniObservation& obs,
                                              const CountryTable* meta);

// --- canonical observation file -----------------------------------------
// Comma-separated, UTF-8, LF, one header row, fixed column order,
// gini_pp with exactly 4 decimals, rows in canonical sort order.

extern const char* const kCanonicalHeader;

void write_canonical(std::ostream& out, std::span<const GiniObservation> obs);
void write_canonical_file(const std::filesystem::path& path,
                          std::span<const GiniObservation> obs);

struct CanonicalReadError {
    std::size_t line_number = 0;
    std::string message;
};

// Parses a canonical file; every row must be well-formed and valid.
// On the first invalid row, throws DataError carrying line and reason.
std::vector<GiniObservation> read_canonical_file(const std::filesystem::path& path,
                                                 const CountryTable* meta);

// Non-aborting variant: collects every problem in the file (parse errors
// and invariant violations, all of them per row).
std::vector<CanonicalReadError> scan_canonical_file(const std::filesystem::path& path,
                                                    const CountryTable* meta);

}  // namespace unigini
