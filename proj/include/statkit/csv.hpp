#ifndef STATKIT_CSV_HPP
#define STATKIT_CSV_HPP

// Columnar CSV ingestion: UTF-8, header row, RFC-4180 quoting, numeric
// cells. Errors name the offending row and column.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "statkit/errors.hpp"

namespace statkit {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data; // data[c][r]

    std::size_t rows() const { return columns.empty() ? 0 : data[0].size(); }

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == name) return data[c];
        throw ingestion_error("csv: no column named '" + name + "'");
    }
    bool has_column(const std::string& name) const {
        for (const auto& c : columns)
            if (c == name) return true;
        return false;
    }
};

namespace detail {

// One RFC-4180 record; the input stream position is left after the record.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int ch;
    while ((ch = in.get()) != EOF) {
        any = true;
        char c = char(ch);
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c == '\r') {
            // swallow; newline handling below
        } else if (c == '\n') {
            fields.push_back(field);
            return true;
        } else {
            field += c;
        }
    }
    if (any) fields.push_back(field);
    return any;
}

inline double parse_cell(const std::string& s, std::size_t row, std::size_t col) {
    std::string t = s;
    // trim blanks
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    if (t.empty())
        throw ingestion_error("csv: empty cell at row " + std::to_string(row) +
                              ", column " + std::to_string(col));
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size() || v != v)
        throw ingestion_error("csv: non-numeric cell '" + s + "' at row " +
                              std::to_string(row) + ", column " + std::to_string(col));
    return v;
}

} // namespace detail

inline CsvTable read_csv(std::istream& in) {
    CsvTable t;
    std::vector<std::string> rec;
    if (!detail::read_record(in, rec) || (rec.size() == 1 && rec[0].empty()))
        throw ingestion_error("csv: empty file");
    t.columns = rec;
    t.data.assign(t.columns.size(), {});
    std::size_t row = 1;
    while (detail::read_record(in, rec)) {
        if (rec.size() == 1 && rec[0].empty()) continue; // trailing blank line
        ++row;
        if (rec.size() != t.columns.size())
            throw ingestion_error("csv: row " + std::to_string(row) + " has " +
                                  std::to_string(rec.size()) + " cells, expected " +
                                  std::to_string(t.columns.size()));
        for (std::size_t c = 0; c < rec.size(); ++c)
            t.data[c].push_back(detail::parse_cell(rec[c], row, c + 1));
    }
    if (t.rows() == 0) throw ingestion_error("csv: no data rows");
    return t;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ingestion_error("csv: cannot open '" + path + "'");
    return read_csv(f);
}

inline void write_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    std::size_t rows = columns.empty() ? 0 : columns[0].size();
    char buf[40];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace statkit

#endif
