#include "unigini/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "unigini/csv.hpp"

namespace unigini::report {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string f2(double v) { return csv::format_fixed(v, 2); }
std::string f3(double v) { return csv::format_fixed(v, 3); }

// JSON mirrors carry the same rounded values the text reports print.
double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

const char* group_column(discord::GroupBy group_by) {
    return group_by == discord::GroupBy::region ? "region" : "income_group";
}

void variability_row(std::ostream& out, const discord::VariabilityRow& row) {
    out << row.label << ',' << row.n << ',' << f2(row.mean_range) << ',' << f2(row.mean_sd)
        << ',' << f2(row.median_range) << ',' << f2(row.max_range) << '\n';
}

void gaps_row(std::ostream& out, const discord::GapStats& row) {
    out << row.group_label << ',' << row.n_obs << ',' << f2(row.mean_gap_pp) << ','
        << f2(row.median_gap_pp) << ',' << f2(row.p75_gap_pp) << '\n';
}

void summary_row(std::ostream& out, const discord::DatasetSummaryRow& row) {
    out << row.dataset << ',' << row.n_obs << ',' << row.n_countries << ',';
    if (row.n_obs > 0) {
        out << row.min_year << ',' << row.max_year << ',' << f2(row.mean_gini);
    } else {
        out << ".,.,.";
    }
    out << '\n';
}

}  // namespace

std::string render_variability(const discord::VariabilityReport& report,
                               discord::GroupBy group_by) {
    std::ostringstream out;
    out << group_column(group_by) << ",n_obs,mean_range,mean_sd,median_range,max_range\n";
    for (const auto& row : report.groups) variability_row(out, row);
    if (report.total.n > 0) {
        variability_row(out, report.total);
    } else {
        out << "total,0,.,.,.,.\n";
    }
    return out.str();
}

std::string render_concordance(std::span<const discord::ConcordanceCell> cells) {
    std::ostringstream out;
    out << "db_a,db_b,n_overlap,pearson,mad_pp\n";
    for (const auto& c : cells) {
        out << to_token(c.db_a) << ',' << to_token(c.db_b) << ',' << c.n_overlap << ','
            << (c.pearson ? f3(*c.pearson) : ".") << ','
            << (c.mad_pp ? f2(*c.mad_pp) : ".") << '\n';
    }
    return out.str();
}

std::string render_gaps(const discord::GapReport& report, discord::GroupBy group_by) {
    std::ostringstream out;
    out << group_column(group_by) << ",n_obs,mean_gap,median_gap,p75_gap\n";
    for (const auto& row : report.groups) gaps_row(out, row);
    if (report.total.n_obs > 0) {
        gaps_row(out, report.total);
    } else {
        out << "total,0,.,.,.\n";
    }
    return out.str();
}

std::string render_summary(const discord::DatasetSummary& summary) {
    std::ostringstream out;
    out << "dataset,n_obs,n_countries,min_year,max_year,mean_gini\n";
    for (const auto& row : summary.rows) summary_row(out, row);
    summary_row(out, summary.total);
    return out.str();
}

std::string render_metric_map(std::span<const discord::CountryMetric> rows) {
    std::ostringstream out;
    out << "country,metric\n";
    for (const auto& r : rows) out << r.country_iso3 << ',' << r.metric << '\n';
    return out.str();
}

std::string render_scatter(std::span<const discord::IncConsPair> pairs) {
    std::ostringstream out;
    out << "country,year,income_gini,consumption_gini\n";
    for (const auto& p : pairs) {
        out << p.country_iso3 << ',' << p.year << ',' << csv::format_fixed(p.income_pp, 4)
            << ',' << csv::format_fixed(p.consumption_pp, 4) << '\n';
    }
    return out.str();
}

std::string render_series(std::span<const discord::YearSummary> rows) {
    std::ostringstream out;
    out << "year,n,min,q1,median,q3,max\n";
    for (const auto& r : rows) {
        out << r.year << ',' << r.n << ',' << f2(r.min) << ',' << f2(r.q1) << ','
            << f2(r.median) << ',' << f2(r.q3) << ',' << f2(r.max) << '\n';
    }
    return out.str();
}

std::string render_sankey(std::span<const ingest::ProvenanceEdge> edges) {
    std::ostringstream out;
    out << "origin,destination,weight\n";
    for (const auto& e : edges) {
        out << e.origin << ',' << to_token(e.destination) << ',' << e.weight << '\n';
    }
    return out.str();
}

std::string json_variability(const discord::VariabilityReport& report,
                             discord::GroupBy group_by) {
    ordered_json rows = ordered_json::array();
    auto to_json = [&](const discord::VariabilityRow& row) {
        ordered_json j;
        j[group_column(group_by)] = row.label;
        j["n_obs"] = row.n;
        j["mean_range"] = round_to(row.mean_range, 2);
        j["mean_sd"] = round_to(row.mean_sd, 2);
        j["median_range"] = round_to(row.median_range, 2);
        j["max_range"] = round_to(row.max_range, 2);
        return j;
    };
    for (const auto& row : report.groups) rows.push_back(to_json(row));
    ordered_json doc;
    doc["groups"] = rows;
    doc["total"] = report.total.n > 0 ? to_json(report.total) : ordered_json{{"n_obs", 0}};
    return doc.dump(2) + "\n";
}

std::string json_concordance(std::span<const discord::ConcordanceCell> cells) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : cells) {
        ordered_json j;
        j["db_a"] = to_token(c.db_a);
        j["db_b"] = to_token(c.db_b);
        j["n_overlap"] = c.n_overlap;
        j["pearson"] = c.pearson ? ordered_json(round_to(*c.pearson, 3)) : ordered_json(nullptr);
        j["mad_pp"] = c.mad_pp ? ordered_json(round_to(*c.mad_pp, 2)) : ordered_json(nullptr);
        if (!c.pearson_note.empty()) j["pearson_note"] = c.pearson_note;
        rows.push_back(std::move(j));
    }
    ordered_json doc;
    doc["pairs"] = rows;
    return doc.dump(2) + "\n";
}

std::string json_gaps(const discord::GapReport& report, discord::GroupBy group_by) {
    ordered_json rows = ordered_json::array();
    auto to_json = [&](const discord::GapStats& row) {
        ordered_json j;
        j[group_column(group_by)] = row.group_label;
        j["n_obs"] = row.n_obs;
        j["mean_gap"] = round_to(row.mean_gap_pp, 2);
        j["median_gap"] = round_to(row.median_gap_pp, 2);
        j["p75_gap"] = round_to(row.p75_gap_pp, 2);
        return j;
    };
    for (const auto& row : report.groups) rows.push_back(to_json(row));
    ordered_json doc;
    doc["groups"] = rows;
    doc["total"] = report.total.n_obs > 0 ? to_json(report.total) : ordered_json{{"n_obs", 0}};
    return doc.dump(2) + "\n";
}

std::string json_summary(const discord::DatasetSummary& summary) {
    ordered_json rows = ordered_json::array();
    auto to_json = [&](const discord::DatasetSummaryRow& row) {
        ordered_json j;
        j["dataset"] = row.dataset;
        j["n_obs"] = row.n_obs;
        j["n_countries"] = row.n_countries;
        if (row.n_obs > 0) {
            j["min_year"] = row.min_year;
            j["max_year"] = row.max_year;
            j["mean_gini"] = round_to(row.mean_gini, 2);
        } else {
            j["min_year"] = nullptr;
            j["max_year"] = nullptr;
            j["mean_gini"] = nullptr;
        }
        return j;
    };
    for (const auto& row : summary.rows) rows.push_back(to_json(row));
    ordered_json doc;
    doc["datasets"] = rows;
    doc["total"] = to_json(summary.total);
    return doc.dump(2) + "\n";
}

}  // namespace unigini::report
