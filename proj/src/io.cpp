#include "tempcorr/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tempcorr {
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (const auto& kv : table.meta)
        os << "# " << kv.first << "=" << kv.second << "\n";
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) os << ",";
        os << table.columns[i];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: row width does not match header");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << format_double(row[i]);
        }
        os << "\n";
    }
    return os.str();
}

void write_csv(const std::string& path, const Table& table) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << to_csv(table);
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

Table read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    Table t;
    std::string line;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(line.substr(1));
            size_t eq = body.find('=');
            if (eq != std::string::npos)
                t.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        if (!header_seen) {
            for (const auto& c : split(line, ',')) t.columns.push_back(trim(c));
            header_seen = true;
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() != t.columns.size())
            throw std::runtime_error("csv: ragged row in '" + path + "'");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            const std::string v = trim(c);
            char* end = nullptr;
            double x = std::strtod(v.c_str(), &end);
            if (end == v.c_str() || *end != '\0')
                throw std::runtime_error("csv: bad number '" + v + "' in '" +
                                         path + "'");
            row.push_back(x);
        }
        t.rows.push_back(std::move(row));
    }
    if (!header_seen) throw std::runtime_error("csv: no header in '" + path + "'");
    return t;
}

std::string to_json(const Table& table) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["meta"] = nlohmann::json::object();
    for (const auto& kv : table.meta) j["meta"][kv.first] = kv.second;
    j["columns"] = table.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::runtime_error("json: row width does not match header");
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

void write_json(const std::string& path, const Table& table) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << to_json(table);
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace tempcorr
