#include "unigini/discord.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "unigini/errors.hpp"
#include "unigini/simd.hpp"

namespace unigini::discord {

namespace {

// Runs fn(i) for i in [0, n) across `threads` workers. Each index owns
// its output slot, so scheduling cannot affect results.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nworkers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> workers;
    workers.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += nworkers) fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

double mean_of(std::span<const double> v) {
    return simd::sum(v) / static_cast<double>(v.size());
}

double collapse_values(std::vector<double> v, Collapse collapse) {
    if (collapse == Collapse::mean) return mean_of(v);
    std::sort(v.begin(), v.end());
    return quantile(v, 0.5);
}

// Sample Pearson correlation; nullopt when either series has zero
// variance on the overlap.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    const double mx = mean_of(x);
    const double my = mean_of(y);
    std::vector<double> dx(x.size()), dy(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        dx[i] = x[i] - mx;
        dy[i] = y[i] - my;
    }
    const double sxx = simd::dot(dx, dx);
    const double syy = simd::dot(dy, dy);
    const double sxy = simd::dot(dx, dy);
    (void)n;
    if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

using CellKey = std::pair<std::string, int>;  // (iso3, year)

}  // namespace

double quantile(std::span<const double> sorted_values, double p) {
    const std::size_t n = sorted_values.size();
    if (n == 0) throw DataError("quantile of empty set");
    if (n == 1) return sorted_values[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted_values[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]);
}

std::vector<GiniObservation> analysis_filter(std::span<const GiniObservation> collection,
                                             const AnalysisFilter& filter) {
    std::vector<GiniObservation> out;
    out.reserve(collection.size());
    for (const auto& obs : collection) {
        if (filter.coverage && obs.area_coverage != *filter.coverage) continue;
        if (filter.subgroup && obs.subgroup != *filter.subgroup) continue;
        out.push_back(obs);
    }
    return out;
}

std::vector<CellStats> cell_variability(std::span<const GiniObservation> collection,
                                        CellValues values, int threads) {
    std::map<CellKey, std::vector<const GiniObservation*>> cells;
    for (const auto& obs : collection) {
        cells[{obs.country_iso3, obs.year}].push_back(&obs);
    }

    std::vector<const std::pair<const CellKey, std::vector<const GiniObservation*>>*> work;
    work.reserve(cells.size());
    for (const auto& entry : cells) work.push_back(&entry);

    std::vector<std::optional<CellStats>> slots(work.size());
    parallel_for(work.size(), threads, [&](std::size_t i) {
        const auto& [key, members] = *work[i];
        std::set<SourceDb> dbs;
        for (const auto* obs : members) dbs.insert(obs->source_db);
        if (dbs.size() < 2) return;

        std::vector<double> vals;
        if (values == CellValues::all_observations) {
            vals.reserve(members.size());
            for (const auto* obs : members) vals.push_back(obs->gini_pp);
        } else {
            // Collapse each database to its mean first (the alternative
            // reading of "range across databases").
            std::map<SourceDb, std::vector<double>> by_db;
            for (const auto* obs : members) by_db[obs->source_db].push_back(obs->gini_pp);
            for (const auto& [db, v] : by_db) vals.push_back(mean_of(v));
        }
        std::sort(vals.begin(), vals.end());

        CellStats stats;
        stats.country_iso3 = key.first;
        stats.year = key.second;
        stats.n_obs = static_cast<int>(vals.size());
        stats.n_databases = static_cast<int>(dbs.size());
        auto [mn, mx] = simd::min_max(vals);
        stats.min_pp = mn;
        stats.max_pp = mx;
        stats.range_pp = mx - mn;
        const double m = mean_of(vals);
        std::vector<double> dev(vals.size());
        for (std::size_t k = 0; k < vals.size(); ++k) dev[k] = vals[k] - m;
        stats.sd_pp = std::sqrt(simd::dot(dev, dev) / static_cast<double>(vals.size() - 1));
        slots[i] = std::move(stats);
    });

    std::vector<CellStats> out;
    out.reserve(work.size());
    for (auto& slot : slots) {
        if (slot) out.push_back(std::move(*slot));
    }
    return out;  // map iteration keeps (country, year) order
}

std::string group_label(const CountryTable& meta, std::string_view iso3, GroupBy group_by) {
    const CountryMeta* country = meta.find(iso3);
    if (!country) return "unclassified";
    if (group_by == GroupBy::region) return std::string(to_token(country->region));
    return std::string(to_token(country->income_group));
}

namespace {

VariabilityRow summarize_cells(const std::string& label,
                               const std::vector<const CellStats*>& cells) {
    VariabilityRow row;
    row.label = label;
    row.n = static_cast<int>(cells.size());
    std::vector<double> ranges, sds;
    ranges.reserve(cells.size());
    sds.reserve(cells.size());
    for (const auto* c : cells) {
        ranges.push_back(c->range_pp);
        sds.push_back(c->sd_pp);
    }
    row.mean_range = mean_of(ranges);
    row.mean_sd = mean_of(sds);
    std::sort(ranges.begin(), ranges.end());
    row.median_range = quantile(ranges, 0.5);
    row.max_range = ranges.back();
    return row;
}

// Group ordering: regions alphabetically by code; income groups in the
// conventional high-to-low order; "unclassified" last either way.
std::vector<std::string> group_order(GroupBy group_by) {
    std::vector<std::string> order;
    if (group_by == GroupBy::region) {
        for (auto r : all_regions) order.emplace_back(to_token(r));
        order.emplace_back("unclassified");
    } else {
        for (auto g : all_income_groups) order.emplace_back(to_token(g));
    }
    return order;
}

}  // namespace

VariabilityReport variability_report(std::span<const CellStats> cells,
                                     const CountryTable& meta, GroupBy group_by) {
    std::map<std::string, std::vector<const CellStats*>> grouped;
    std::vector<const CellStats*> all;
    all.reserve(cells.size());
    for (const auto& c : cells) {
        grouped[group_label(meta, c.country_iso3, group_by)].push_back(&c);
        all.push_back(&c);
    }

    VariabilityReport report;
    for (const auto& label : group_order(group_by)) {
        auto it = grouped.find(label);
        if (it == grouped.end()) continue;  // empty group omitted
        report.groups.push_back(summarize_cells(label, it->second));
    }
    if (!all.empty()) {
        report.total = summarize_cells("total", all);
    } else {
        report.total.label = "total";
    }
    return report;
}

std::vector<ConcordanceCell> pairwise_concordance(std::span<const GiniObservation> collection,
                                                  int min_overlap, Collapse collapse,
                                                  int threads) {
    // Collapse each (db, country, year) to one value.
    std::map<SourceDb, std::map<CellKey, std::vector<double>>> raw;
    for (const auto& obs : collection) {
        raw[obs.source_db][{obs.country_iso3, obs.year}].push_back(obs.gini_pp);
    }
    std::map<SourceDb, std::map<CellKey, double>> series;
    for (auto& [db, cells] : raw) {
        for (auto& [key, vals] : cells) {
            series[db][key] = collapse_values(std::move(vals), collapse);
        }
    }

    std::vector<SourceDb> dbs;
    for (const auto& [db, cells] : series) dbs.push_back(db);
    std::sort(dbs.begin(), dbs.end(),
              [](SourceDb a, SourceDb b) { return to_token(a) < to_token(b); });

    std::vector<std::pair<SourceDb, SourceDb>> pairs;
    for (std::size_t i = 0; i < dbs.size(); ++i) {
        for (std::size_t j = i; j < dbs.size(); ++j) {
            pairs.emplace_back(dbs[i], dbs[j]);
        }
    }

    std::vector<ConcordanceCell> out(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        ConcordanceCell cell;
        cell.db_a = a;
        cell.db_b = b;
        const auto& sa = series.at(a);
        const auto& sb = series.at(b);
        if (a == b) {
            cell.n_overlap = static_cast<int>(sa.size());
            if (cell.n_overlap >= min_overlap) {
                cell.pearson = 1.0;
                cell.mad_pp = 0.0;
            }
            out[k] = std::move(cell);
            return;
        }
        std::vector<double> va, vb;
        for (const auto& [key, value] : sa) {
            auto hit = sb.find(key);
            if (hit == sb.end()) continue;
            va.push_back(value);
            vb.push_back(hit->second);
        }
        cell.n_overlap = static_cast<int>(va.size());
        if (cell.n_overlap >= min_overlap) {
            cell.pearson = pearson(va, vb);
            if (!cell.pearson) cell.pearson_note = "zero variance on overlap";
            cell.mad_pp = simd::abs_diff_sum(va, vb) / static_cast<double>(va.size());
        }
        out[k] = std::move(cell);
    });
    return out;
}

std::vector<IncConsPair> income_consumption_pairs(std::span<const GiniObservation> collection,
                                                  Collapse collapse) {
    std::map<CellKey, std::pair<std::vector<double>, std::vector<double>>> cells;
    for (const auto& obs : collection) {
        if (obs.welfare_metric == WelfareMetric::income) {
            cells[{obs.country_iso3, obs.year}].first.push_back(obs.gini_pp);
        } else if (obs.welfare_metric == WelfareMetric::consumption) {
            cells[{obs.country_iso3, obs.year}].second.push_back(obs.gini_pp);
        }
    }
    std::vector<IncConsPair> out;
    for (auto& [key, values] : cells) {
        auto& [income, consumption] = values;
        if (income.empty() || consumption.empty()) continue;
        IncConsPair pair;
        pair.country_iso3 = key.first;
        pair.year = key.second;
        pair.income_pp = collapse_values(std::move(income), collapse);
        pair.consumption_pp = collapse_values(std::move(consumption), collapse);
        out.push_back(std::move(pair));
    }
    return out;
}

namespace {

GapStats summarize_gaps(const std::string& label, std::vector<double> gaps) {
    GapStats stats;
    stats.group_label = label;
    stats.n_obs = static_cast<int>(gaps.size());
    stats.mean_gap_pp = mean_of(gaps);
    std::sort(gaps.begin(), gaps.end());
    stats.median_gap_pp = quantile(gaps, 0.5);
    stats.p75_gap_pp = quantile(gaps, 0.75);
    return stats;
}

}  // namespace

GapReport income_consumption_gaps(std::span<const GiniObservation> collection,
                                  const CountryTable& meta, GroupBy group_by,
                                  Collapse collapse) {
    auto pairs = income_consumption_pairs(collection, collapse);
    std::map<std::string, std::vector<double>> grouped;
    std::vector<double> all;
    all.reserve(pairs.size());
    for (const auto& p : pairs) {
        const double gap = p.income_pp - p.consumption_pp;
        grouped[group_label(meta, p.country_iso3, group_by)].push_back(gap);
        all.push_back(gap);
    }

    GapReport report;
    for (const auto& label : group_order(group_by)) {
        auto it = grouped.find(label);
        if (it == grouped.end()) continue;
        report.groups.push_back(summarize_gaps(label, std::move(it->second)));
    }
    if (!all.empty()) {
        report.total = summarize_gaps("total", std::move(all));
    } else {
        report.total.group_label = "total";
    }
    return report;
}

DatasetSummary dataset_summary(std::span<const GiniObservation> collection) {
    struct Acc {
        std::set<std::string> countries;
        std::vector<double> ginis;
        int min_year = 0;
        int max_year = 0;
    };
    std::map<SourceDb, Acc> by_db;
    Acc total_acc;
    for (const auto& obs : collection) {
        for (Acc* acc : {&by_db[obs.source_db], &total_acc}) {
            if (acc->ginis.empty()) {
                acc->min_year = acc->max_year = obs.year;
            } else {
                acc->min_year = std::min(acc->min_year, obs.year);
                acc->max_year = std::max(acc->max_year, obs.year);
            }
            acc->countries.insert(obs.country_iso3);
            acc->ginis.push_back(obs.gini_pp);
        }
    }

    auto to_row = [](const std::string& name, const Acc& acc) {
        DatasetSummaryRow row;
        row.dataset = name;
        row.n_obs = static_cast<int>(acc.ginis.size());
        row.n_countries = static_cast<int>(acc.countries.size());
        row.min_year = acc.min_year;
        row.max_year = acc.max_year;
        row.mean_gini = acc.ginis.empty() ? 0.0 : mean_of(acc.ginis);
        return row;
    };

    DatasetSummary summary;
    for (const auto& [db, acc] : by_db) {
        summary.rows.push_back(to_row(std::string(to_token(db)), acc));
    }
    std::sort(summary.rows.begin(), summary.rows.end(),
              [](const DatasetSummaryRow& a, const DatasetSummaryRow& b) {
                  return a.dataset < b.dataset;
              });
    summary.total = to_row("total", total_acc);
    return summary;
}

std::vector<CountryMetric> prevalent_metric(std::span<const GiniObservation> collection) {
    std::map<std::string, std::pair<int, std::map<WelfareMetric, int>>> latest;
    for (const auto& obs : collection) {
        auto it = latest.find(obs.country_iso3);
        if (it == latest.end() || obs.year > it->second.first) {
            latest[obs.country_iso3] = {obs.year, {{obs.welfare_metric, 1}}};
        } else if (obs.year == it->second.first) {
            it->second.second[obs.welfare_metric] += 1;
        }
    }
    std::vector<CountryMetric> out;
    out.reserve(latest.size());
    for (const auto& [iso3, entry] : latest) {
        const auto& counts = entry.second;
        int best = 0;
        for (const auto& [metric, n] : counts) best = std::max(best, n);
        std::vector<WelfareMetric> winners;
        for (const auto& [metric, n] : counts) {
            if (n == best) winners.push_back(metric);
        }
        CountryMetric cm;
        cm.country_iso3 = iso3;
        cm.metric = winners.size() == 1 ? std::string(to_token(winners.front())) : "mixed";
        out.push_back(std::move(cm));
    }
    return out;
}

std::vector<YearSummary> country_series(std::span<const GiniObservation> collection,
                                        std::string_view country_iso3) {
    std::map<int, std::vector<double>> by_year;
    for (const auto& obs : collection) {
        if (obs.country_iso3 == country_iso3) by_year[obs.year].push_back(obs.gini_pp);
    }
    if (by_year.empty()) {
        throw DataError("unknown country '" + std::string(country_iso3) +
                        "' (no observations in collection)");
    }
    std::vector<YearSummary> out;
    out.reserve(by_year.size());
    for (auto& [year, values] : by_year) {
        std::sort(values.begin(), values.end());
        YearSummary ys;
        ys.year = year;
        ys.n = static_cast<int>(values.size());
        ys.min = values.front();
        ys.q1 = quantile(values, 0.25);
        ys.median = quantile(values, 0.5);
        ys.q3 = quantile(values, 0.75);
        ys.max = values.back();
        out.push_back(ys);
    }
    return out;
}

}  // namespace unigini::discord
