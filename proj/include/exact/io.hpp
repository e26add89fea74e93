#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exact::io {

/// Shortest-round-trip-safe text for a double (17 significant digits).
std::string fmt(double v);

/// RFC 4180 field quoting: quote when the field holds a comma, quote or newline.
std::string csv_field(const std::string& s);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
    std::vector<double> numeric_column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

} // namespace exact::io
