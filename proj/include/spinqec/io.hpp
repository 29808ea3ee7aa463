#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace spinqec {

// Empty cells render as empty CSV fields / JSON null (gap rows).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest round-trip representation, 17 significant digits, C locale.
std::string format_double(double v);

// Comma separator, header row, LF line endings, minimal quoting.
void write_csv(std::ostream& os, const Table& t);
std::string to_csv(const Table& t);

// Cells come back as strings; re-emitting a parsed table reproduces the
// input bytes.
Table read_csv(std::istream& is);

// Array of row objects in column order, 2-space indent, trailing newline.
std::string to_json(const Table& t);

}  // namespace spinqec
