#include "tfim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tfim/errors.hpp"

namespace tfim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidConfig("column '" + name + "' not found");
}

std::vector<double> Table::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.at(c));
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t) {
    os << "{\"columns\":[";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << '"' << t.columns[i] << '"';
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << '[';
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            const double v = t.rows[r][i];
            os << (i ? "," : "") << (std::isfinite(v) ? format_double(v) : "null");
        }
        os << ']';
    }
    os << "]}\n";
}

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw InvalidConfig("empty CSV input");
    t.columns = split(trim(line), ',');
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != t.columns.size()) throw InvalidConfig("CSV row width does not match header");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                std::size_t pos = 0;
                row.push_back(std::stod(c, &pos));
                if (pos != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw InvalidConfig("non-numeric CSV cell '" + c + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table read_csv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidConfig("cannot open " + path);
    return read_csv(f);
}

std::map<std::string, std::string> parse_key_values(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            throw InvalidConfig("config line " + std::to_string(lineno) + " is not key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidConfig("cannot open config file " + path);
    return parse_key_values(f);
}

}  // namespace tfim
