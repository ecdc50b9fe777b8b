#include "contests/table.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "contests/errors.hpp"

namespace contests {

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw ValidationError("table row width does not match header");
  rows.push_back(std::move(cells));
}

std::string format_fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string format_full(double x) {
  char buf[64];
  for (int precision = 1; precision < 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) return std::string(buf);
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

void write_table(std::ostream& out, const Table& table,
                 const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << "\n";
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "\t" : "") << table.columns[j];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? "\t" : "") << row[j];
    out << "\n";
  }
}

void write_table_file(const std::string& path, const Table& table,
                      const std::vector<std::string>& comments) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open " + tmp + " for writing");
    write_table(out, table, comments);
    out.flush();
    if (!out) throw ValidationError("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw ValidationError("cannot move " + tmp + " to " + path + ": " +
                          ec.message());
}

Table parse_table(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (!have_header) {
      table.columns = std::move(cells);
      have_header = true;
    } else {
      table.add_row(std::move(cells));
    }
  }
  if (!have_header) throw ValidationError("table input has no header row");
  return table;
}

Table parse_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  return parse_table(in);
}

}  // namespace contests
