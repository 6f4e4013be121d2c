#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dl/rational.hpp"

namespace dl {

/// One output cell, preformatted; quoted controls JSON emission.
struct Cell {
    std::string text;
    bool quoted = false;
};

Cell cell(const std::string& s);
Cell cell(long v);
Cell cell(double v, int precision);
Cell cell(const Rational& v);

/// Scientific-notation string built from log10(value), for numbers far
/// outside double range.
Cell cell_from_log10(double log10_value, int precision);

/// Column-major table with trailing key=value notes; CSV and JSON emissions
/// mirror each other column for column.
struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> notes;

    void note(const std::string& key, Cell value) { notes.emplace_back(key, std::move(value)); }
};

std::string format_double(double v, int precision);

void write_csv(const Table& t, std::ostream& out);
void write_json(const Table& t, std::ostream& out);

}  // namespace dl
