// io.hpp: CSV/JSON serialization and the flat key=value config format

#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "wqed/figures.hpp"
#include "wqed/lattice_oracle.hpp"

namespace wqed {

enum class OutputFormat { Csv, Json };

OutputFormat parse_output_format(const std::string& name);

/// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

/// Header row, then one line per row; metadata first as "# name=value" lines.
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

nlohmann::json to_json(const Table& table);
Table table_from_json(const nlohmann::json& j);
std::string to_json_string(const Table& table);

/// Probability snapshots as t,j,prob records.
void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& history, long L);

/// One complex coupling factor per line as "re im"; blank lines and '#'
/// comments are skipped. Errors name the offending line.
std::vector<std::complex<double>> read_zeta_file(const std::filesystem::path& path);

struct ConfigEntry {
    std::string value;
    int line;
};

/// Flat "key = value" file. '#' starts a comment. Duplicate keys and lines
/// without '=' are rejected with the line number.
std::map<std::string, ConfigEntry> read_config_file(const std::filesystem::path& path);
std::map<std::string, ConfigEntry> parse_config(std::istream& in, const std::string& source);

} // namespace wqed
