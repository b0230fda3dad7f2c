#include "thermophase/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "thermophase/errors.hpp"

namespace thermophase::csv {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim spaces and stray CR
    size_t b = cell.find_first_not_of(" \t\r");
    size_t e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

double parse_number(const std::string& s, int line_no) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("radial table line " + std::to_string(line_no) +
                      ": cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

RadialTable parse_radial_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  size_t ncols = 0;
  std::vector<double> r, v, a;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_line(line);
    if (cells.empty()) continue;
    if (!header_seen) {
      if (cells.size() < 2 || cells.size() > 3) {
        throw DomainError("radial table header must have 2 or 3 columns (r,V[,A])");
      }
      header_seen = true;
      ncols = cells.size();
      continue;
    }
    if (cells.size() != ncols) {
      throw DomainError("radial table line " + std::to_string(line_no) +
                        ": expected " + std::to_string(ncols) + " columns");
    }
    r.push_back(parse_number(cells[0], line_no));
    v.push_back(parse_number(cells[1], line_no));
    if (ncols == 3) a.push_back(parse_number(cells[2], line_no));
  }
  if (!header_seen) throw DomainError("radial table is missing its header row");
  if (r.size() < 2) throw DomainError("radial table needs at least 2 data rows");
  for (size_t i = 1; i < r.size(); ++i) {
    if (!(r[i] > r[i - 1])) {
      throw DomainError("radial table rows must be strictly increasing in r");
    }
  }

  RadialTable t;
  t.r = Eigen::Map<const Eigen::ArrayXd>(r.data(), static_cast<Eigen::Index>(r.size()));
  t.potential = Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  t.has_amplitude = (ncols == 3);
  if (t.has_amplitude) {
    t.amplitude = Eigen::Map<const Eigen::ArrayXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  }
  return t;
}

RadialTable read_radial_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open radial table: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_radial_table(ss.str());
}

}  // namespace thermophase::csv
