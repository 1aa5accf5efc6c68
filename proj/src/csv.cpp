#include "idsample/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "idsample/errors.hpp"

namespace idsample {

int RawTable::column_index(std::string_view name) const {
  for (size_t i = 0; i < column_names.size(); ++i) {
    if (column_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

// Splits one logical CSV record starting at pos. Quoted fields may contain
// commas, newlines and doubled quotes. Returns false at end of input.
bool next_record(std::string_view text, size_t& pos,
                 std::vector<std::string>& fields) {
  if (pos >= text.size()) return false;
  fields.clear();
  std::string field;
  bool in_quotes = false;
  while (pos < text.size()) {
    char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field.push_back('"');
          pos += 2;
        } else {
          in_quotes = false;
          ++pos;
        }
      } else {
        field.push_back(c);
        ++pos;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        ++pos;
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        ++pos;
        break;
      case '\r':
        if (pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
        [[fallthrough]];
      case '\n':
        ++pos;
        fields.push_back(std::move(field));
        return true;
      default:
        field.push_back(c);
        ++pos;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

}  // namespace

RawTable parse_csv_text(std::string_view text, bool has_header,
                        const std::string& origin) {
  // Skip a UTF-8 BOM if present.
  if (text.size() >= 3 && text.substr(0, 3) == "\xef\xbb\xbf") {
    text.remove_prefix(3);
  }

  RawTable table;
  size_t pos = 0;
  std::vector<std::string> fields;
  long record_no = 0;  // 1-based, counting the header if any
  size_t width = 0;

  while (next_record(text, pos, fields)) {
    ++record_no;
    // A trailing newline yields one empty single-field record; ignore it.
    if (fields.size() == 1 && fields[0].empty() && pos >= text.size()) break;

    if (record_no == 1) {
      width = fields.size();
      if (has_header) {
        table.column_names = fields;
        for (size_t i = 0; i < width; ++i) {
          for (size_t j = i + 1; j < width; ++j) {
            if (table.column_names[i] == table.column_names[j]) {
              throw InputError(origin + ": duplicate column name '" +
                               table.column_names[i] + "'");
            }
          }
        }
        table.columns.resize(width);
        continue;
      }
      table.column_names.resize(width);
      for (size_t i = 0; i < width; ++i) {
        table.column_names[i] = "col" + std::to_string(i);
      }
      table.columns.resize(width);
    }
    if (fields.size() != width) {
      throw InputError(origin + ": ragged row " + std::to_string(record_no) +
                       ": expected " + std::to_string(width) + " fields, got " +
                       std::to_string(fields.size()));
    }
    for (size_t i = 0; i < width; ++i) {
      table.columns[i].push_back(std::move(fields[i]));
    }
    ++table.row_count;
  }

  if (record_no == 0) throw InputError(origin + ": no rows");
  if (has_header && table.row_count == 0) {
    throw InputError(origin + ": no rows");
  }
  return table;
}

RawTable parse_csv(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("I/O error reading '" + path + "'");
  return parse_csv_text(buf.str(), has_header, path);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace idsample
