#pragma once

#include <span>
#include <string>

#include "unigini/discord.hpp"
#include "unigini/ingest.hpp"

// Delimited-text renderers for the statistics reports and figure-data
// exports, plus JSON mirrors of the same numbers. All numbers printed
// with a dot decimal separator and no grouping; aggregates to 2 decimal
// places, Pearson correlations to 3, suppressed values as ".".

namespace unigini::report {

std::string render_variability(const discord::VariabilityReport& report,
                               discord::GroupBy group_by);
std::string render_concordance(std::span<const discord::ConcordanceCell> cells);
std::string render_gaps(const discord::GapReport& report, discord::GroupBy group_by);
std::string render_summary(const discord::DatasetSummary& summary);

std::string render_metric_map(std::span<const discord::CountryMetric> rows);
std::string render_scatter(std::span<const discord::IncConsPair> pairs);
std::string render_series(std::span<const discord::YearSummary> rows);
std::string render_sankey(std::span<const ingest::ProvenanceEdge> edges);

std::string json_variability(const discord::VariabilityReport& report,
                             discord::GroupBy group_by);
std::string json_concordance(std::span<const discord::ConcordanceCell> cells);
std::string json_gaps(const discord::GapReport& report, discord::GroupBy group_by);
std::string json_summary(const discord::DatasetSummary& summary);

}  // namespace unigini::report
