#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aniso {

// Shortest representation that round-trips a double exactly (17 significant
// digits).
std::string format_g17(double x);

// Parse a double written by format_g17 (bit-exact round trip).
double parse_g17(const std::string& s);

// Minimal CSV emitter: '#'-prefixed comment lines (manifests, summaries),
// a header row, then data rows with full-precision numbers.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

private:
    std::ostream& out_;
};

struct CsvTable {
    std::vector<std::string> comments; // without leading '#'
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    double number(size_t row, size_t col) const;
};

// Parse CSV produced by CsvWriter ('#' lines collected as comments).
CsvTable parse_csv(std::istream& in);

} // namespace aniso
