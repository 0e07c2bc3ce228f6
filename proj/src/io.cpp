// io.cpp: CSV/JSON writers, zeta files and config files

#include "wqed/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
    const auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

} // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw InvalidInput("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table) {
    for (const auto& [name, value] : table.metadata) out << "# " << name << '=' << format_double(value) << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        bool first = true;
        if (!table.label_column.empty()) {
            out << table.labels.at(r);
            first = false;
        }
        for (double v : table.rows[r]) {
            if (!first) out << ',';
            out << format_double(v);
            first = false;
        }
        out << '\n';
    }
}

std::string to_csv(const Table& table) {
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

nlohmann::json to_json(const Table& table) {
    nlohmann::json j;
    j["columns"] = table.columns;
    if (!table.label_column.empty()) {
        j["label_column"] = table.label_column;
        j["labels"] = table.labels;
    }
    j["rows"] = table.rows;
    nlohmann::json meta = nlohmann::json::object();
    for (const auto& [name, value] : table.metadata) meta[name] = value;
    j["metadata"] = meta;
    return j;
}

Table table_from_json(const nlohmann::json& j) {
    Table t;
    try {
        t.columns = j.at("columns").get<std::vector<std::string>>();
        if (j.contains("label_column")) {
            t.label_column = j.at("label_column").get<std::string>();
            t.labels = j.at("labels").get<std::vector<std::string>>();
        }
        t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
        for (const auto& [name, value] : j.at("metadata").items()) t.metadata.emplace_back(name, value.get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed table JSON: ") + e.what());
    }
    return t;
}

std::string to_json_string(const Table& table) { return to_json(table).dump(2) + "\n"; }

void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& history, long L) {
    out << "t,j,prob\n";
    for (const auto& snap : history) {
        for (std::size_t i = 0; i < snap.probability.size(); ++i) {
            out << format_double(snap.t) << ',' << (static_cast<long>(i) - L) << ','
                << format_double(snap.probability[i]) << '\n';
        }
    }
}

std::vector<std::complex<double>> read_zeta_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open zeta file '" + path.string() + "'");
    std::vector<std::complex<double>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        std::istringstream ls(body);
        double re = 0.0;
        double im = 0.0;
        std::string extra;
        if (!(ls >> re >> im) || (ls >> extra)) {
            throw InvalidInput(path.string() + ":" + std::to_string(lineno) +
                               ": expected two numbers 're im', got '" + body + "'");
        }
        out.emplace_back(re, im);
    }
    if (out.empty()) throw InvalidInput(path.string() + ": no coupling factors found");
    return out;
}

std::map<std::string, ConfigEntry> parse_config(std::istream& in, const std::string& source) {
    std::map<std::string, ConfigEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw InvalidInput(source + ":" + std::to_string(lineno) + ": empty key");
        if (out.count(key)) {
            throw InvalidInput(source + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                               "' (first set on line " + std::to_string(out[key].line) + ")");
        }
        out[key] = {value, lineno};
    }
    return out;
}

std::map<std::string, ConfigEntry> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file '" + path.string() + "'");
    return parse_config(in, path.string());
}

} // namespace wqed
