#include "unigini/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "unigini/errors.hpp"

namespace unigini::csv {

namespace {

// Splits one physical line. Returns nullopt plus an error message via
// `err` when quoting is unbalanced.
std::optional<std::vector<std::string>> split_line(std::string_view line, std::string& err) {
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            cur.push_back(c);
            ++i;
            continue;
        }
        if (c == '"') {
            if (!cur.empty()) {
                err = "quote inside unquoted field";
                return std::nullopt;
            }
            in_quotes = true;
            ++i;
            continue;
        }
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
            ++i;
            continue;
        }
        cur.push_back(c);
        ++i;
    }
    if (in_quotes) {
        err = "unterminated quoted field";
        return std::nullopt;
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

Table read_stream(std::istream& in, const std::string& name) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.size() >= 3 &&
            static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB &&
            static_cast<unsigned char>(line[2]) == 0xBF) {
            line.erase(0, 3);  // strip UTF-8 BOM
        }
        std::string err;
        auto fields = split_line(line, err);
        if (!have_header) {
            if (!fields) {
                throw ConfigError(name + ": malformed header at line " +
                                  std::to_string(line_no) + ": " + err);
            }
            table.header = std::move(*fields);
            have_header = true;
            continue;
        }
        Row row;
        row.line_number = line_no;
        if (fields) {
            row.fields = std::move(*fields);
        } else {
            row.error = err;
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw ConfigError(name + ": empty file, header row required");
    }
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    return read_stream(in, path.string());
}

Table read_file_strict(const std::filesystem::path& path) {
    Table t = read_file(path);
    for (const auto& row : t.rows) {
        if (row.error) {
            throw ConfigError(path.string() + ":" + std::to_string(row.line_number) +
                              ": " + *row.error);
        }
    }
    return t;
}

std::string quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs && !field.empty() &&
        (std::isspace(static_cast<unsigned char>(field.front())) ||
         std::isspace(static_cast<unsigned char>(field.back())))) {
        needs = true;
    }
    if (!needs) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << quote(fields[i]);
    }
    out.put('\n');
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    std::string s(buf, res.ptr);
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);  // -0.00 -> 0.00
    }
    return s;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

}  // namespace unigini::csv
