#pragma once
// Figure-ready tables: RFC-4180-style CSV (comma separated, '.' decimal,
// header row, LF line endings, 12 significant digits) and a
// {meta, columns, rows} JSON wrapper.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwalk {

struct Table {
    nlohmann::json meta = nlohmann::json::object();
    std::string label_column;          // optional leading text column
    std::vector<std::string> labels;   // one per row when label_column is set
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string to_csv(const Table& t) {
    std::string out;
    const bool labelled = !t.label_column.empty();
    if (labelled) out += csv_quote(t.label_column) + (t.columns.empty() ? "" : ",");
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_quote(t.columns[c]);
    }
    out += '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (labelled) out += csv_quote(t.labels[r]) + (t.rows[r].empty() ? "" : ",");
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            if (c) out += ',';
            out += format_number(t.rows[r][c]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json(const Table& t) {
    nlohmann::json j;
    j["meta"] = t.meta;
    nlohmann::json cols = nlohmann::json::array();
    if (!t.label_column.empty()) cols.push_back(t.label_column);
    for (const auto& c : t.columns) cols.push_back(c);
    j["columns"] = cols;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        if (!t.label_column.empty()) row.push_back(t.labels[r]);
        for (double v : t.rows[r]) row.push_back(v);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace qwalk
