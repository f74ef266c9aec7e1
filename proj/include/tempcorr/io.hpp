#pragma once

#include <map>
#include <string>
#include <vector>

namespace tempcorr {

// Column-oriented numeric table with a flat metadata block, the common
// currency of the CLI commands.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;
};

// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double x);

// CSV layout: '# key=value' meta lines, then a header row, then data rows.
void write_csv(const std::string& path, const Table& table);
std::string to_csv(const Table& table);
Table read_csv(const std::string& path);

// JSON layout: {"schema_version":1, "meta":{...}, "columns":[...],
// "rows":[[...], ...]}.
void write_json(const std::string& path, const Table& table);
std::string to_json(const Table& table);

}  // namespace tempcorr
