#include "aniso/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>

#include "aniso/errors.hpp"

namespace aniso {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_g17(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
        throw ValidationError("not a number: '" + s + "'");
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0')
        throw ValidationError("trailing characters after number: '" + s + "'");
    return v;
}

void CsvWriter::comment(const std::string& text) {
    out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
        out_ << (i ? "," : "") << names[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_g17(values[i]);
    out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    for (size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << values[i];
    out_ << "\n";
}

double CsvTable::number(size_t row, size_t col) const {
    if (row >= rows.size() || col >= rows[row].size())
        throw ValidationError("CSV cell out of range");
    return parse_g17(rows[row][col]);
}

CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t start = line.find_first_not_of(" \t", 1);
            t.comments.push_back(start == std::string::npos
                                     ? std::string()
                                     : line.substr(start));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (!saw_header) {
            t.header = std::move(cells);
            saw_header = true;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

} // namespace aniso
