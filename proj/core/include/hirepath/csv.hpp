#pragma once

#include <string>
#include <vector>

namespace hirepath::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // source line of each row, for error reporting (1-based, header is line 1)
  std::vector<std::size_t> line_numbers;

  int column(const std::string& name) const;  // -1 if absent
};

// RFC 4180: quoted fields, doubled quotes, embedded newlines. CRLF and LF
// both accepted. First record is the header.
Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& name_for_errors = "<string>");

std::string escape(const std::string& field);
void write_file(const std::string& path, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows);

}  // namespace hirepath::csv
