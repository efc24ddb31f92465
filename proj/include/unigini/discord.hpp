#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unigini/country.hpp"
#include "unigini/observation.hpp"

// The four cross-database discordance exercises plus per-dataset
// summaries, prevalent-metric classification, and country series.
// Computations per (country,year) cell, per database pair, and per group
// are independent; when threads > 1 they run concurrently into
// preallocated slots and final assembly sorts keys, so output is
// byte-identical for any degree of parallelism.

namespace unigini::discord {

// nullopt means "any". Default keeps national coverage and the overall
// subgroup so that breakdown rows (urban/rural, quintiles, ...) do not
// inflate the statistics.
struct AnalysisFilter {
    std::optional<AreaCoverage> coverage = AreaCoverage::national;
    std::optional<Subgroup> subgroup = Subgroup::overall;
};

std::vector<GiniObservation> analysis_filter(std::span<const GiniObservation> collection,
                                             const AnalysisFilter& filter);

// How multiple observations from one database in one cell are collapsed
// to a single value before pairwise exercises.
enum class Collapse { mean, median };

// Whether the variability statistics run over all observations in a cell
// or over per-database collapsed values.
enum class CellValues { all_observations, per_database_mean };

struct CellStats {
    std::string country_iso3;
    int year = 0;
    int n_obs = 0;
    int n_databases = 0;
    double range_pp = 0.0;
    double sd_pp = 0.0;
    double min_pp = 0.0;
    double max_pp = 0.0;
};

// One CellStats per (country, year) observed by >= 2 distinct databases.
// sd is the sample standard deviation (n-1 denominator). Sorted by
// (country, year).
std::vector<CellStats> cell_variability(std::span<const GiniObservation> collection,
                                        CellValues values = CellValues::all_observations,
                                        int threads = 1);

enum class GroupBy { region, income_group };

struct VariabilityRow {
    std::string label;
    int n = 0;
    double mean_range = 0.0;
    double mean_sd = 0.0;
    double median_range = 0.0;
    double max_range = 0.0;
};

struct VariabilityReport {
    std::vector<VariabilityRow> groups;  // empty groups omitted
    VariabilityRow total;                // over all cells
};

VariabilityReport variability_report(std::span<const CellStats> cells,
                                     const CountryTable& meta, GroupBy group_by);

struct ConcordanceCell {
    SourceDb db_a = SourceDb::UNUWIDER;
    SourceDb db_b = SourceDb::UNUWIDER;
    int n_overlap = 0;
    std::optional<double> pearson;  // null below min_overlap or on zero variance
    std::optional<double> mad_pp;   // null below min_overlap
    std::string pearson_note;       // why pearson is null despite enough overlap
};

// All unordered database pairs (including the diagonal) over the
// databases present in the collection, sorted by (token_a, token_b) with
// token_a <= token_b. Per-database cell values are collapsed before
// pairing.
std::vector<ConcordanceCell> pairwise_concordance(std::span<const GiniObservation> collection,
                                                  int min_overlap = 20,
                                                  Collapse collapse = Collapse::mean,
                                                  int threads = 1);

struct GapStats {
    std::string group_label;
    int n_obs = 0;
    double mean_gap_pp = 0.0;
    double median_gap_pp = 0.0;
    double p75_gap_pp = 0.0;
};

struct GapReport {
    std::vector<GapStats> groups;
    GapStats total;
};

// One paired row per country-year where both an income and a consumption
// estimate exist: gap = collapsed income Gini minus collapsed consumption
// Gini. Sorted by (country, year).
struct IncConsPair {
    std::string country_iso3;
    int year = 0;
    double income_pp = 0.0;
    double consumption_pp = 0.0;
};

std::vector<IncConsPair> income_consumption_pairs(std::span<const GiniObservation> collection,
                                                  Collapse collapse = Collapse::mean);

GapReport income_consumption_gaps(std::span<const GiniObservation> collection,
                                  const CountryTable& meta, GroupBy group_by,
                                  Collapse collapse = Collapse::mean);

struct DatasetSummaryRow {
    std::string dataset;  // source db token, or "total"
    int n_obs = 0;
    int n_countries = 0;
    int min_year = 0;
    int max_year = 0;
    double mean_gini = 0.0;
};

struct DatasetSummary {
    std::vector<DatasetSummaryRow> rows;  // one per present database
    DatasetSummaryRow total;
};

// Summary over the unfiltered collection.
DatasetSummary dataset_summary(std::span<const GiniObservation> collection);

struct CountryMetric {
    std::string country_iso3;
    std::string metric;  // welfare metric token, or "mixed" on a modal tie
};

// Modal welfare metric among each country's most recent year of
// observations. Sorted by country.
std::vector<CountryMetric> prevalent_metric(std::span<const GiniObservation> collection);

struct YearSummary {
    int year = 0;
    int n = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Per-year five-number summary for one country; years with no data are
// omitted. Throws DataError when the country has no observations.
std::vector<YearSummary> country_series(std::span<const GiniObservation> collection,
                                        std::string_view country_iso3);

// Quantile by linear interpolation at rank (n-1)*p over sorted values.
// The single quantile rule used everywhere (medians, quartiles, P75).
double quantile(std::span<const double> sorted_values, double p);

std::string group_label(const CountryTable& meta, std::string_view iso3, GroupBy group_by);

}  // namespace unigini::discord
