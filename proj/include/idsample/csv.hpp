#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace idsample {

// Column-oriented text table, the raw form of a CSV file.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> columns;  // columns[c][r]
  long row_count = 0;

  long col_count() const { return static_cast<long>(columns.size()); }
  int column_index(std::string_view name) const;  // -1 if absent
};

// Reads an RFC-4180-style CSV file (UTF-8, comma delimiter, double-quote
// escaping, CR/LF or LF line ends). When has_header is false, columns are
// named col0..colN-1. Throws InputError on I/O failure, an empty file, or
// a ragged row (message carries row number and expected/actual counts).
RawTable parse_csv(const std::string& path, bool has_header);

// Same grammar, parsed from a string. Used by parse_csv and by tests.
RawTable parse_csv_text(std::string_view text, bool has_header,
                        const std::string& origin = "<string>");

// Quotes a field if it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace idsample
