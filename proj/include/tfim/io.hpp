#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tfim {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  // throws InvalidConfig if absent
    std::vector<double> values(const std::string& name) const;
};

// 17 significant digits, comma separated, LF line endings, header row first.
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);
Table read_csv(std::istream& is);
Table read_csv_file(const std::string& path);

std::string format_double(double v);

// Flat "key = value" lines; '#' starts a comment. Throws InvalidConfig on malformed lines.
std::map<std::string, std::string> parse_key_values(std::istream& is);
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

}  // namespace tfim
