#include "unigini/country.hpp"

#include <cctype>

#include "unigini/csv.hpp"
#include "unigini/errors.hpp"

namespace unigini {

namespace {

std::vector<std::string> split_aliases(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t semi = s.find(';', start);
        std::string_view part = s.substr(start, semi == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : semi - start);
        std::string t = csv::trim(part);
        if (!t.empty()) out.push_back(std::move(t));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return out;
}

bool is_alpha3(std::string_view s) {
    if (s.size() != 3) return false;
    for (char c : s) {
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

CountryTable CountryTable::load(const std::filesystem::path& path) {
    csv::Table t = csv::read_file_strict(path);
    const std::vector<std::string> want = {"iso3", "name", "region7", "income_group", "aliases"};
    if (t.header != want) {
        throw ConfigError(path.string() + ": expected header iso3,name,region7,income_group,aliases");
    }
    CountryTable table;
    for (const auto& row : t.rows) {
        if (row.fields.size() != 5) {
            throw ConfigError(path.string() + ":" + std::to_string(row.line_number) +
                              ": expected 5 fields");
        }
        CountryMeta meta;
        meta.iso3 = csv::to_upper(csv::trim(row.fields[0]));
        meta.name = csv::trim(row.fields[1]);
        auto region = parse_region7(csv::trim(row.fields[2]));
        auto group = parse_income_group(csv::trim(row.fields[3]));
        if (!is_alpha3(meta.iso3)) {
            throw ConfigError(path.string() + ":" + std::to_string(row.line_number) +
                              ": bad iso3 '" + meta.iso3 + "'");
        }
        if (!region || !group) {
            throw ConfigError(path.string() + ":" + std::to_string(row.line_number) +
                              ": bad region or income_group for " + meta.iso3);
        }
        meta.region = *region;
        meta.income_group = *group;
        meta.aliases = split_aliases(row.fields[4]);

        if (table.by_code_.count(meta.iso3)) {
            throw ConfigError(path.string() + ": duplicate iso3 " + meta.iso3);
        }
        std::size_t idx = table.rows_.size();
        table.by_code_[meta.iso3] = idx;
        table.by_alias_[csv::to_lower(meta.name)] = idx;
        for (const auto& alias : meta.aliases) {
            table.by_alias_[csv::to_lower(alias)] = idx;
        }
        table.rows_.push_back(std::move(meta));
    }
    return table;
}

const CountryMeta* CountryTable::find(std::string_view iso3) const {
    auto it = by_code_.find(std::string(iso3));
    return it == by_code_.end() ? nullptr : &rows_[it->second];
}

std::optional<std::string> CountryTable::normalize(std::string_view token) const {
    std::string t = csv::trim(token);
    if (t.empty()) return std::nullopt;
    if (is_alpha3(t)) {
        std::string code = csv::to_upper(t);
        if (by_code_.count(code)) return code;
    }
    auto it = by_alias_.find(csv::to_lower(t));
    if (it != by_alias_.end()) return rows_[it->second].iso3;
    return std::nullopt;
}

}  // namespace unigini
