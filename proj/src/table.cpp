#include "dl/table.hpp"

#include <cmath>
#include <cstdio>

namespace dl {

Cell cell(const std::string& s) { return Cell{s, true}; }

Cell cell(long v) { return Cell{std::to_string(v), false}; }

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

Cell cell(double v, int precision) {
    if (!std::isfinite(v)) return Cell{v > 0 ? "inf" : v < 0 ? "-inf" : "nan", true};
    return Cell{format_double(v, precision), false};
}

Cell cell(const Rational& v) { return Cell{to_fraction(v), true}; }

Cell cell_from_log10(double log10_value, int precision) {
    if (!std::isfinite(log10_value)) {
        if (log10_value < 0) return Cell{"0", false};
        return Cell{"inf", true};
    }
    double e = std::floor(log10_value);
    double mant = std::pow(10.0, log10_value - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision - 1, mant);
    // Rounding can push the mantissa to 10.000...
    if (buf[0] == '1' && buf[1] == '0') {
        e += 1.0;
        std::snprintf(buf, sizeof buf, "%.*f", precision - 1, mant / 10.0);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%se%+d", buf, int(e));
    return Cell{out, false};
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void json_cell(const Cell& c, std::ostream& out) {
    if (c.quoted) out << '"' << json_escape(c.text) << '"';
    else out << c.text;
}

}  // namespace

void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(t.columns[i]);
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(row[i].text);
        }
        out << '\n';
    }
    for (const auto& [k, v] : t.notes) out << "# " << k << "=" << v.text << '\n';
}

void write_json(const Table& t, std::ostream& out) {
    out << "{\n  \"schema_version\": 1,\n  \"command\": \"" << json_escape(t.command) << "\",\n";
    out << "  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ", ";
        out << '"' << json_escape(t.columns[i]) << '"';
    }
    out << "],\n  \"rows\": [\n";
    for (std::size_t ri = 0; ri < t.rows.size(); ++ri) {
        out << "    [";
        for (std::size_t i = 0; i < t.rows[ri].size(); ++i) {
            if (i) out << ", ";
            json_cell(t.rows[ri][i], out);
        }
        out << (ri + 1 < t.rows.size() ? "],\n" : "]\n");
    }
    out << "  ],\n  \"notes\": {";
    for (std::size_t i = 0; i < t.notes.size(); ++i) {
        if (i) out << ", ";
        out << '"' << json_escape(t.notes[i].first) << "\": ";
        json_cell(t.notes[i].second, out);
    }
    out << "}\n}\n";
}

}  // namespace dl
