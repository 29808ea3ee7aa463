#include "spinqec/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "spinqec/errors.hpp"

namespace spinqec {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c))
        return std::to_string(*i);
    return std::get<std::string>(c);
}

bool needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

void write_field(std::ostream& os, const std::string& s) {
    if (!needs_quotes(s)) {
        os << s;
        return;
    }
    os << '"';
    for (char ch : s) {
        if (ch == '"') os << '"';
        os << ch;
    }
    os << '"';
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) os << ',';
        write_field(os, t.columns[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            write_field(os, cell_text(row[i]));
        }
        os << '\n';
    }
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

namespace {

std::vector<std::string> parse_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && cur.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    if (!std::getline(is, line)) throw ConfigParse("empty CSV input");
    t.columns = parse_line(line);
    while (std::getline(is, line)) {
        std::vector<Cell> row;
        for (std::string& f : parse_line(line)) {
            if (f.empty())
                row.emplace_back(std::monostate{});
            else
                row.emplace_back(std::move(f));
        }
        if (row.size() != t.columns.size())
            throw ConfigParse("CSV row width mismatch");
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& c = row[i];
            if (std::holds_alternative<std::monostate>(c))
                obj[t.columns[i]] = nullptr;
            else if (const double* d = std::get_if<double>(&c))
                obj[t.columns[i]] = *d;
            else if (const std::int64_t* n = std::get_if<std::int64_t>(&c))
                obj[t.columns[i]] = *n;
            else
                obj[t.columns[i]] = std::get<std::string>(c);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace spinqec
