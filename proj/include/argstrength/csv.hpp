#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace argstrength::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// RFC-4180 reader: quoted fields may contain commas, doubled quotes and
/// line breaks. CRLF and LF line endings are both accepted.
std::vector<Record> read(std::istream& in);
std::vector<Record> read_file(const std::string& path);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace argstrength::csv
