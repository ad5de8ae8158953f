#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cumica/linalg.hpp"

namespace cumica {

/// Shortest decimal that parses back to the same double. "inf", "-inf",
/// and "NA" for NaN.
std::string format_number(double value);

/// Strict parse of a whole token; accepts the spellings format_number writes.
double parse_number(std::string_view token);

struct CsvTable {
  std::vector<std::string> comments;  // '#' lines without the marker
  std::vector<std::string> header;    // empty if the first row was numeric
  Matrix data;
};

/// Comma-separated numeric table. Lines starting with '#' and blank lines
/// are skipped; a first row with any non-numeric field is the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const Matrix& data, const std::vector<std::string>& header = {});

}  // namespace cumica
