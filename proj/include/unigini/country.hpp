#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unigini/vocab.hpp"

namespace unigini {

// Reference record mapping a country or territory to its World Bank
// region code and income group, plus the aliases the normalizer accepts.
struct CountryMeta {
    std::string iso3;
    std::string name;
    Region7 region = Region7::EAS;
    IncomeGroup income_group = IncomeGroup::unclassified;
    std::vector<std::string> aliases;
};

// Loaded from a delimited file with columns iso3,name,region7,income_group,
// aliases (aliases separated by ';'). The name itself acts as an alias.
class CountryTable {
public:
    static CountryTable load(const std::filesystem::path& path);

    const CountryMeta* find(std::string_view iso3) const;

    // Canonical iso3 via exact code match or alias lookup (case-insensitive,
    // trimmed). nullopt for unresolvable tokens.
    std::optional<std::string> normalize(std::string_view token) const;

    std::size_t size() const { return rows_.size(); }
    const std::vector<CountryMeta>& rows() const { return rows_; }

private:
    std::vector<CountryMeta> rows_;
    std::map<std::string, std::size_t> by_code_;
    std::map<std::string, std::size_t> by_alias_;  // lowercased
};

}  // namespace unigini
