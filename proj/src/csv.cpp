#include "cumica/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "cumica/errors.hpp"

namespace cumica {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool try_parse(std::string_view token, double& value) {
  if (token == "NA" || token == "nan") {
    value = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  if (token == "inf") {
    value = std::numeric_limits<double>::infinity();
    return true;
  }
  if (token == "-inf") {
    value = -std::numeric_limits<double>::infinity();
    return true;
  }
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size() && !token.empty();
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

double parse_number(std::string_view token) {
  double v = 0.0;
  if (!try_parse(trim(token), v)) throw Error(ErrorKind::ParseError, "not a number: '" + std::string(token) + "'");
  return v;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      view.remove_prefix(1);
      table.comments.emplace_back(trim(view));
      continue;
    }
    const auto parts = fields(view);
    std::vector<double> row(parts.size());
    bool numeric = true;
    for (std::size_t i = 0; i < parts.size() && numeric; ++i) numeric = try_parse(parts[i], row[i]);
    if (!numeric) {
      if (rows.empty() && table.header.empty()) {
        for (auto f : parts) table.header.emplace_back(f);
        continue;
      }
      throw Error(ErrorKind::ParseError, "non-numeric field on line " + std::to_string(line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::ParseError, "ragged row on line " + std::to_string(line_no));
    if (!table.header.empty() && row.size() != table.header.size())
      throw Error(ErrorKind::ParseError, "row width differs from header on line " + std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  const Eigen::Index cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  table.data.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (Eigen::Index c = 0; c < cols; ++c) table.data(static_cast<Eigen::Index>(r), c) = rows[r][c];
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return read_csv(in);
}

void write_csv(std::ostream& out, const Matrix& data, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  if (!header.empty()) out << '\n';
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_number(data(r, c));
    out << '\n';
  }
}

}  // namespace cumica
