#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Minimal delimited-text layer used by every file interface: comma
// separator, UTF-8, LF line endings, one header row. Fields containing
// a comma, a double quote, or leading/trailing whitespace are quoted;
// quotes are doubled. Embedded newlines inside fields are not supported.

namespace unigini::csv {

struct Row {
    std::size_t line_number = 0;         // 1-based physical line in the file
    std::vector<std::string> fields;
    std::optional<std::string> error;    // set when the line is structurally malformed
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;               // data rows only, header excluded
};

// Tolerant reader: malformed lines are kept with `error` set so callers
// can turn them into row-level rejects. Throws ConfigError only for
// unreadable files or a malformed/missing header.
Table read_file(const std::filesystem::path& path);
Table read_stream(std::istream& in, const std::string& name);

// Strict variant: any malformed row throws ConfigError.
Table read_file_strict(const std::filesystem::path& path);

std::string quote(std::string_view field);
void write_row(std::ostream& out, std::span<const std::string> fields);

// Fixed-decimal formatting, locale-independent (dot separator, no
// grouping). Negative zero is normalized to plain zero.
std::string format_fixed(double v, int decimals);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

}  // namespace unigini::csv
