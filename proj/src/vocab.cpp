#include "unigini/vocab.hpp"

namespace unigini {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<std::string_view, E>, N>& table,
                        std::string_view token) {
    for (const auto& [tok, v] : table) {
        if (tok == token) return v;
    }
    return std::nullopt;
}

constexpr std::array<std::pair<std::string_view, SourceDb>, 13> source_db_tokens = {{
    {"ADB", SourceDb::ADB},
    {"AFRISTAT", SourceDb::AFRISTAT},
    {"ATG", SourceDb::ATG},
    {"CEPAL", SourceDb::CEPAL},
    {"EUROSTAT", SourceDb::EUROSTAT},
    {"IDB", SourceDb::IDB},
    {"LIS", SourceDb::LIS},
    {"OECD", SourceDb::OECD},
    {"SEDLAC", SourceDb::SEDLAC},
    {"SWIID", SourceDb::SWIID},
    {"UNUWIDER", SourceDb::UNUWIDER},
    {"WBPIP", SourceDb::WBPIP},
    {"WID", SourceDb::WID},
}};

constexpr std::array<std::pair<std::string_view, WelfareMetric>, 4> welfare_tokens = {{
    {"income", WelfareMetric::income},
    {"consumption", WelfareMetric::consumption},
    {"expenditure", WelfareMetric::expenditure},
    {"unknown", WelfareMetric::unknown},
}};

constexpr std::array<std::pair<std::string_view, MetricType>, 5> metric_type_tokens = {{
    {"gross", MetricType::gross},
    {"net", MetricType::net},
    {"mixed", MetricType::mixed},
    {"not_applicable", MetricType::not_applicable},
    {"unknown", MetricType::unknown},
}};

constexpr std::array<std::pair<std::string_view, ReferenceUnit>, 5> reference_unit_tokens = {{
    {"per_capita", ReferenceUnit::per_capita},
    {"adult_equivalent", ReferenceUnit::adult_equivalent},
    {"household", ReferenceUnit::household},
    {"tax_unit", ReferenceUnit::tax_unit},
    {"unknown", ReferenceUnit::unknown},
}};

constexpr std::array<std::pair<std::string_view, EqScale>, 6> eq_scale_tokens = {{
    {"per_capita", EqScale::per_capita},
    {"oecd_modified", EqScale::oecd_modified},
    {"square_root", EqScale::square_root},
    {"other", EqScale::other},
    {"not_applicable", EqScale::not_applicable},
    {"unknown", EqScale::unknown},
}};

constexpr std::array<std::pair<std::string_view, AreaCoverage>, 6> area_tokens = {{
    {"national", AreaCoverage::national},
    {"urban", AreaCoverage::urban},
    {"rural", AreaCoverage::rural},
    {"main_cities", AreaCoverage::main_cities},
    {"other", AreaCoverage::other},
    {"unknown", AreaCoverage::unknown},
}};

constexpr std::array<std::pair<std::string_view, Subgroup>, 7> subgroup_tokens = {{
    {"overall", Subgroup::overall},
    {"gender", Subgroup::gender},
    {"age", Subgroup::age},
    {"ethnicity", Subgroup::ethnicity},
    {"quintile", Subgroup::quintile},
    {"other", Subgroup::other},
    {"unknown", Subgroup::unknown},
}};

constexpr std::array<std::pair<std::string_view, ProvenanceOrigin>, 4> provenance_tokens = {{
    {"nsa_survey", ProvenanceOrigin::nsa_survey},
    {"secondary_database", ProvenanceOrigin::secondary_database},
    {"administrative", ProvenanceOrigin::administrative},
    {"unknown", ProvenanceOrigin::unknown},
}};

constexpr std::array<std::pair<std::string_view, Region7>, 7> region_tokens = {{
    {"EAS", Region7::EAS},
    {"ECS", Region7::ECS},
    {"LCN", Region7::LCN},
    {"MEA", Region7::MEA},
    {"NAC", Region7::NAC},
    {"SAS", Region7::SAS},
    {"SSF", Region7::SSF},
}};

constexpr std::array<std::pair<std::string_view, IncomeGroup>, 5> income_group_tokens = {{
    {"high", IncomeGroup::high},
    {"upper_middle", IncomeGroup::upper_middle},
    {"lower_middle", IncomeGroup::lower_middle},
    {"low", IncomeGroup::low},
    {"unclassified", IncomeGroup::unclassified},
}};

template <typename E, std::size_t N>
std::string_view token_of(const std::array<std::pair<std::string_view, E>, N>& table, E v) {
    for (const auto& [tok, val] : table) {
        if (val == v) return tok;
    }
    return "unknown";
}

}  // namespace

std::string_view to_token(SourceDb v) { return token_of(source_db_tokens, v); }
std::string_view to_token(WelfareMetric v) { return token_of(welfare_tokens, v); }
std::string_view to_token(MetricType v) { return token_of(metric_type_tokens, v); }
std::string_view to_token(ReferenceUnit v) { return token_of(reference_unit_tokens, v); }
std::string_view to_token(EqScale v) { return token_of(eq_scale_tokens, v); }
std::string_view to_token(AreaCoverage v) { return token_of(area_tokens, v); }
std::string_view to_token(Subgroup v) { return token_of(subgroup_tokens, v); }
std::string_view to_token(ProvenanceOrigin v) { return token_of(provenance_tokens, v); }
std::string_view to_token(Region7 v) { return token_of(region_tokens, v); }
std::string_view to_token(IncomeGroup v) { return token_of(income_group_tokens, v); }

std::optional<SourceDb> parse_source_db(std::string_view t) { return lookup(source_db_tokens, t); }
std::optional<WelfareMetric> parse_welfare_metric(std::string_view t) { return lookup(welfare_tokens, t); }
std::optional<MetricType> parse_metric_type(std::string_view t) { return lookup(metric_type_tokens, t); }
std::optional<ReferenceUnit> parse_reference_unit(std::string_view t) { return lookup(reference_unit_tokens, t); }
std::optional<EqScale> parse_eq_scale(std::string_view t) { return lookup(eq_scale_tokens, t); }
std::optional<AreaCoverage> parse_area_coverage(std::string_view t) { return lookup(area_tokens, t); }
std::optional<Subgroup> parse_subgroup(std::string_view t) { return lookup(subgroup_tokens, t); }
std::optional<ProvenanceOrigin> parse_provenance_origin(std::string_view t) { return lookup(provenance_tokens, t); }
std::optional<Region7> parse_region7(std::string_view t) { return lookup(region_tokens, t); }
std::optional<IncomeGroup> parse_income_group(std::string_view t) { return lookup(income_group_tokens, t); }

}  // namespace unigini
