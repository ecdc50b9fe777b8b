#ifndef CONTESTS_TABLE_HPP
#define CONTESTS_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace contests {

// Tab-separated table with a header row. Cells are stored as text; numeric
// cells should be produced with format_fixed so exports are byte-stable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

// Fixed 6-decimal rendering; negative zero collapses to "0.000000".
std::string format_fixed(double x);

// Full-precision rendering (shortest round-trippable decimal).
std::string format_full(double x);

void write_table(std::ostream& out, const Table& table,
                 const std::vector<std::string>& comments = {});

// Writes atomically (temp file + rename). Comment lines are emitted before
// the header, prefixed with "# ".
void write_table_file(const std::string& path, const Table& table,
                      const std::vector<std::string>& comments = {});

// Parses the write_table format back; '#' lines and blank lines are skipped,
// the first remaining line is the header.
Table parse_table(std::istream& in);
Table parse_table_file(const std::string& path);

}  // namespace contests

#endif
