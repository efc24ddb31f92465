#pragma once

#include <array>
#include <optional>
#include <string_view>

// Controlled vocabularies for the canonical observation schema. Every
// enum is a closed set: adding a member is a code change, not a data
// event. "unknown" is always an explicit member, never an empty string.

namespace unigini {

enum class SourceDb {
    ADB,
    AFRISTAT,
    ATG,
    CEPAL,
    EUROSTAT,
    IDB,
    LIS,
    OECD,
    SEDLAC,
    SWIID,
    UNUWIDER,
    WBPIP,
    WID,
};

enum class WelfareMetric { income, consumption, expenditure, unknown };

enum class MetricType { gross, net, mixed, not_applicable, unknown };

enum class ReferenceUnit { per_capita, adult_equivalent, household, tax_unit, unknown };

enum class EqScale { per_capita, oecd_modified, square_root, other, not_applicable, unknown };

enum class AreaCoverage { national, urban, rural, main_cities, other, unknown };

enum class Subgroup { overall, gender, age, ethnicity, quintile, other, unknown };

enum class ProvenanceOrigin { nsa_survey, secondary_database, administrative, unknown };

// World Bank seven-region codes.
enum class Region7 { EAS, ECS, LCN, MEA, NAC, SAS, SSF };

enum class IncomeGroup { high, upper_middle, lower_middle, low, unclassified };

inline constexpr std::array<SourceDb, 13> all_source_dbs = {
    SourceDb::ADB,    SourceDb::AFRISTAT, SourceDb::ATG,      SourceDb::CEPAL,
    SourceDb::EUROSTAT, SourceDb::IDB,    SourceDb::LIS,      SourceDb::OECD,
    SourceDb::SEDLAC, SourceDb::SWIID,    SourceDb::UNUWIDER, SourceDb::WBPIP,
    SourceDb::WID,
};

inline constexpr std::array<Region7, 7> all_regions = {
    Region7::EAS, Region7::ECS, Region7::LCN, Region7::MEA,
    Region7::NAC, Region7::SAS, Region7::SSF,
};

// Report order follows the usual high-to-low presentation.
inline constexpr std::array<IncomeGroup, 5> all_income_groups = {
    IncomeGroup::high, IncomeGroup::upper_middle, IncomeGroup::lower_middle,
    IncomeGroup::low, IncomeGroup::unclassified,
};

std::string_view to_token(SourceDb v);
std::string_view to_token(WelfareMetric v);
std::string_view to_token(MetricType v);
std::string_view to_token(ReferenceUnit v);
std::string_view to_token(EqScale v);
std::string_view to_token(AreaCoverage v);
std::string_view to_token(Subgroup v);
std::string_view to_token(ProvenanceOrigin v);
std::string_view to_token(Region7 v);
std::string_view to_token(IncomeGroup v);

// Exact-token parsers; nullopt for anything outside the vocabulary.
std::optional<SourceDb> parse_source_db(std::string_view token);
std::optional<WelfareMetric> parse_welfare_metric(std::string_view token);
std::optional<MetricType> parse_metric_type(std::string_view token);
std::optional<ReferenceUnit> parse_reference_unit(std::string_view token);
std::optional<EqScale> parse_eq_scale(std::string_view token);
std::optional<AreaCoverage> parse_area_coverage(std::string_view token);
std::optional<Subgroup> parse_subgroup(std::string_view token);
std::optional<ProvenanceOrigin> parse_provenance_origin(std::string_view token);
std::optional<Region7> parse_region7(std::string_view token);
std::optional<IncomeGroup> parse_income_group(std::string_view token);

}  // namespace unigini
