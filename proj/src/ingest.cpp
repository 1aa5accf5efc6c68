#include "idsample/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "idsample/errors.hpp"

namespace idsample {

const char* to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kCategorical: return "categorical";
    case ColumnKind::kTrafficType: return "traffic_type";
    case ColumnKind::kBinaryLabel: return "binary_label";
    case ColumnKind::kDrop: return "drop";
  }
  return "?";
}

std::optional<ColumnKind> parse_column_kind(std::string_view text) {
  if (text == "numeric") return ColumnKind::kNumeric;
  if (text == "categorical") return ColumnKind::kCategorical;
  if (text == "traffic_type") return ColumnKind::kTrafficType;
  if (text == "binary_label") return ColumnKind::kBinaryLabel;
  if (text == "drop") return ColumnKind::kDrop;
  return std::nullopt;
}

std::optional<double> parse_double(std::string_view text) {
  size_t b = text.find_first_not_of(" \t");
  if (b == std::string_view::npos) return std::nullopt;
  size_t e = text.find_last_not_of(" \t");
  text = text.substr(b, e - b + 1);
  if (!text.empty() && text[0] == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Lexicographic rank of each distinct value, 0-based.
std::unordered_map<std::string, int> rank_by_sorted_distinct(
    const std::vector<std::string>& column, std::vector<std::string>* sorted_out = nullptr) {
  std::vector<std::string> distinct(column.begin(), column.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::unordered_map<std::string, int> rank;
  rank.reserve(distinct.size());
  for (size_t i = 0; i < distinct.size(); ++i) {
    rank.emplace(distinct[i], static_cast<int>(i));
  }
  if (sorted_out) *sorted_out = std::move(distinct);
  return rank;
}

std::uint64_t hash_row(const Dataset& ds, long r) {
  // FNV-1a over the raw feature bytes (with -0.0 normalized) and both labels.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (long c = 0; c < ds.dims(); ++c) {
    double v = ds.features(r, c);
    if (v == 0.0) v = 0.0;  // fold -0.0 into +0.0
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    mix(bits);
  }
  mix(static_cast<std::uint64_t>(ds.binary_label(r)));
  mix(static_cast<std::uint64_t>(ds.traffic_type(r)));
  return h;
}

bool rows_equal(const Dataset& ds, long a, long b) {
  if (ds.binary_label(a) != ds.binary_label(b)) return false;
  if (ds.traffic_type(a) != ds.traffic_type(b)) return false;
  for (long c = 0; c < ds.dims(); ++c) {
    if (ds.features(a, c) != ds.features(b, c)) return false;
  }
  return true;
}

}  // namespace

Dataset select_rows(const Dataset& ds, const std::vector<long>& rows) {
  Dataset out;
  out.features.resize(static_cast<long>(rows.size()), ds.dims());
  out.binary_label.resize(static_cast<long>(rows.size()));
  out.traffic_type.resize(static_cast<long>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<long>(i)) = ds.features.row(rows[i]);
    out.binary_label(static_cast<long>(i)) = ds.binary_label(rows[i]);
    out.traffic_type(static_cast<long>(i)) = ds.traffic_type(rows[i]);
  }
  out.feature_names = ds.feature_names;
  out.class_names = ds.class_names;
  out.normal_class_id = ds.normal_class_id;
  out.provenance = ds.provenance;
  return out;
}

SchemaOverrides load_schema_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open schema file '" + path + "'");
  SchemaOverrides ov;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (auto kind = parse_column_kind(value)) {
      ov.kinds[key] = *kind;
    } else if (key == "traffic_type") {
      ov.traffic_type_column = value;
    } else if (key == "normal") {
      ov.normal_class_name = value;
    } else {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": unknown kind '" + value + "' for column '" + key +
                       "'");
    }
  }
  return ov;
}

SchemaSpec infer_schema(const RawTable& table,
                        const std::string& traffic_type_column,
                        const std::string& normal_class_name) {
  int tcol = table.column_index(traffic_type_column);
  if (tcol < 0) {
    throw InputError("traffic-type column '" + traffic_type_column +
                     "' not found in table");
  }
  SchemaSpec schema;
  schema.traffic_type_column = traffic_type_column;
  schema.normal_class_name = normal_class_name;
  for (long c = 0; c < table.col_count(); ++c) {
    const std::string& name = table.column_names[static_cast<size_t>(c)];
    if (c == tcol) {
      schema.kinds[name] = ColumnKind::kTrafficType;
      continue;
    }
    bool numeric = true;
    for (const std::string& cell : table.columns[static_cast<size_t>(c)]) {
      if (trim(cell).empty()) continue;
      if (!parse_double(cell)) {
        numeric = false;
        break;
      }
    }
    schema.kinds[name] = numeric ? ColumnKind::kNumeric : ColumnKind::kCategorical;
  }
  schema.label_mapping[normal_class_name] = 0;
  for (const std::string& cls : table.columns[static_cast<size_t>(tcol)]) {
    if (cls != normal_class_name) schema.label_mapping[cls] = 1;
  }
  return schema;
}

SchemaSpec infer_schema(const RawTable& table,
                        const std::string& traffic_type_column,
                        const std::string& normal_class_name,
                        const SchemaOverrides& overrides) {
  SchemaSpec schema = infer_schema(table, traffic_type_column, normal_class_name);
  for (const auto& [name, kind] : overrides.kinds) {
    if (table.column_index(name) < 0) {
      throw InputError("schema override names unknown column '" + name + "'");
    }
    if (name == traffic_type_column && kind != ColumnKind::kTrafficType) {
      throw InputError("column '" + name +
                       "' is the traffic-type column; cannot override its kind");
    }
    if (kind == ColumnKind::kTrafficType && name != traffic_type_column) {
      throw InputError("only one traffic_type column is allowed ('" +
                       traffic_type_column + "' is already set)");
    }
    schema.kinds[name] = kind;
  }
  int binary_cols = 0;
  for (const auto& [name, kind] : schema.kinds) {
    if (kind == ColumnKind::kBinaryLabel) ++binary_cols;
  }
  if (binary_cols > 1) {
    throw InputError("at most one column may have kind binary_label");
  }
  return schema;
}

Dataset encode(const RawTable& table, const SchemaSpec& schema) {
  for (const std::string& name : table.column_names) {
    if (!schema.kinds.count(name)) {
      throw InputError("schema does not cover column '" + name + "'");
    }
  }

  const long n = table.row_count;
  int tcol = -1, bcol = -1;
  std::vector<int> feature_cols;
  for (long c = 0; c < table.col_count(); ++c) {
    const std::string& name = table.column_names[static_cast<size_t>(c)];
    switch (schema.kinds.at(name)) {
      case ColumnKind::kTrafficType: tcol = static_cast<int>(c); break;
      case ColumnKind::kBinaryLabel: bcol = static_cast<int>(c); break;
      case ColumnKind::kDrop: break;
      default: feature_cols.push_back(static_cast<int>(c));
    }
  }
  if (tcol < 0) throw InputError("schema has no traffic_type column");

  Dataset ds;
  ds.features.resize(n, static_cast<long>(feature_cols.size()));
  ds.binary_label.resize(n);
  ds.traffic_type.resize(n);

  // Class ids are the lexicographic ranks of the distinct traffic types.
  const auto& traffic = table.columns[static_cast<size_t>(tcol)];
  auto class_rank = rank_by_sorted_distinct(traffic, &ds.class_names);
  for (long r = 0; r < n; ++r) {
    ds.traffic_type(r) = class_rank.at(traffic[static_cast<size_t>(r)]);
  }
  if (auto it = class_rank.find(schema.normal_class_name); it != class_rank.end()) {
    ds.normal_class_id = it->second;
  }

  if (bcol >= 0) {
    const auto& col = table.columns[static_cast<size_t>(bcol)];
    for (long r = 0; r < n; ++r) {
      auto v = parse_double(col[static_cast<size_t>(r)]);
      if (!v || (*v != 0.0 && *v != 1.0)) {
        throw InputError("column '" + table.column_names[static_cast<size_t>(bcol)] +
                         "', row " + std::to_string(r + 1) +
                         ": binary label must be 0 or 1, got '" +
                         col[static_cast<size_t>(r)] + "'");
      }
      ds.binary_label(r) = static_cast<int>(*v);
    }
  } else {
    for (long r = 0; r < n; ++r) {
      auto it = schema.label_mapping.find(traffic[static_cast<size_t>(r)]);
      if (it == schema.label_mapping.end()) {
        throw InputError("traffic type '" + traffic[static_cast<size_t>(r)] +
                         "' (row " + std::to_string(r + 1) +
                         ") missing from label mapping");
      }
      ds.binary_label(r) = it->second;
    }
  }

  long out_c = 0;
  for (int c : feature_cols) {
    const std::string& name = table.column_names[static_cast<size_t>(c)];
    const auto& col = table.columns[static_cast<size_t>(c)];
    ds.feature_names.push_back(name);
    if (schema.kinds.at(name) == ColumnKind::kNumeric) {
      for (long r = 0; r < n; ++r) {
        auto v = parse_double(col[static_cast<size_t>(r)]);
        if (!v) {
          throw InputError("column '" + name + "', row " + std::to_string(r + 1) +
                           ": cannot parse '" + col[static_cast<size_t>(r)] +
                           "' as a number");
        }
        ds.features(r, out_c) = *v;
      }
    } else {
      auto rank = rank_by_sorted_distinct(col);
      for (long r = 0; r < n; ++r) {
        ds.features(r, out_c) = rank.at(col[static_cast<size_t>(r)]);
      }
    }
    ++out_c;
  }

  ds.provenance = "encoded " + std::to_string(n) + " rows, " +
                  std::to_string(feature_cols.size()) + " feature columns, " +
                  std::to_string(ds.class_names.size()) + " traffic types";
  return ds;
}

Dataset dedup(const Dataset& ds) {
  std::unordered_map<std::uint64_t, std::vector<long>> seen;
  seen.reserve(static_cast<size_t>(ds.rows()));
  std::vector<long> keep;
  keep.reserve(static_cast<size_t>(ds.rows()));
  for (long r = 0; r < ds.rows(); ++r) {
    auto& bucket = seen[hash_row(ds, r)];
    bool duplicate = false;
    for (long prev : bucket) {
      if (rows_equal(ds, prev, r)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      bucket.push_back(r);
      keep.push_back(r);
    }
  }
  long removed = ds.rows() - static_cast<long>(keep.size());
  Dataset out = select_rows(ds, keep);
  if (!out.provenance.empty()) out.provenance += "\n";
  out.provenance += "dedup: removed " + std::to_string(removed) + " duplicate rows";
  return out;
}

Dataset drop_constant_columns(const Dataset& ds) {
  std::vector<long> keep_cols;
  std::vector<std::string> dropped;
  for (long c = 0; c < ds.dims(); ++c) {
    auto col = ds.features.col(c);
    if (ds.rows() > 0 && col.minCoeff() == col.maxCoeff()) {
      dropped.push_back(ds.feature_names[static_cast<size_t>(c)]);
    } else {
      keep_cols.push_back(c);
    }
  }
  if (keep_cols.empty()) throw InputError("no informative features");

  Dataset out;
  out.features.resize(ds.rows(), static_cast<long>(keep_cols.size()));
  for (size_t i = 0; i < keep_cols.size(); ++i) {
    out.features.col(static_cast<long>(i)) = ds.features.col(keep_cols[i]);
    out.feature_names.push_back(ds.feature_names[static_cast<size_t>(keep_cols[i])]);
  }
  out.binary_label = ds.binary_label;
  out.traffic_type = ds.traffic_type;
  out.class_names = ds.class_names;
  out.normal_class_id = ds.normal_class_id;
  out.provenance = ds.provenance;
  if (!out.provenance.empty()) out.provenance += "\n";
  out.provenance += "drop_constant_columns: dropped " + std::to_string(dropped.size());
  for (const auto& name : dropped) out.provenance += " " + name;
  return out;
}

std::string dataset_to_csv(const Dataset& ds) {
  std::string out;
  for (const auto& name : ds.feature_names) {
    out += csv_escape(name);
    out += ',';
  }
  out += "__label,__type\n";
  for (long r = 0; r < ds.rows(); ++r) {
    for (long c = 0; c < ds.dims(); ++c) {
      out += format_double(ds.features(r, c));
      out += ',';
    }
    out += ds.binary_label(r) ? '1' : '0';
    out += ',';
    out += csv_escape(ds.class_name(ds.traffic_type(r)));
    out += '\n';
  }
  return out;
}

void save_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << dataset_to_csv(ds);
  if (!out) throw InputError("I/O error writing '" + path + "'");
}

Dataset dataset_from_table(const RawTable& table, const std::string& origin) {
  int lcol = table.column_index("__label");
  int tcol = table.column_index("__type");
  if (lcol < 0 || tcol < 0) {
    throw InputError(origin + ": not an encoded dataset (missing __label/__type columns)");
  }
  const long n = table.row_count;
  Dataset ds;
  std::vector<int> feature_cols;
  for (long c = 0; c < table.col_count(); ++c) {
    if (c == lcol || c == tcol) continue;
    feature_cols.push_back(static_cast<int>(c));
    ds.feature_names.push_back(table.column_names[static_cast<size_t>(c)]);
  }
  ds.features.resize(n, static_cast<long>(feature_cols.size()));
  ds.binary_label.resize(n);
  ds.traffic_type.resize(n);

  for (size_t i = 0; i < feature_cols.size(); ++i) {
    const auto& col = table.columns[static_cast<size_t>(feature_cols[i])];
    for (long r = 0; r < n; ++r) {
      auto v = parse_double(col[static_cast<size_t>(r)]);
      if (!v) {
        throw InputError(origin + ": column '" + ds.feature_names[i] + "', row " +
                         std::to_string(r + 1) + ": cannot parse '" +
                         col[static_cast<size_t>(r)] + "' as a number");
      }
      ds.features(r, static_cast<long>(i)) = *v;
    }
  }

  const auto& labels = table.columns[static_cast<size_t>(lcol)];
  for (long r = 0; r < n; ++r) {
    const std::string& s = labels[static_cast<size_t>(r)];
    if (s == "0")
      ds.binary_label(r) = 0;
    else if (s == "1")
      ds.binary_label(r) = 1;
    else
      throw InputError(origin + ": __label row " + std::to_string(r + 1) +
                       " must be 0 or 1, got '" + s + "'");
  }

  const auto& types = table.columns[static_cast<size_t>(tcol)];
  auto class_rank = rank_by_sorted_distinct(types, &ds.class_names);
  for (long r = 0; r < n; ++r) {
    ds.traffic_type(r) = class_rank.at(types[static_cast<size_t>(r)]);
  }

  // The normal class is the unique traffic type whose rows all carry label 0.
  std::vector<char> has_zero(ds.class_names.size(), 0), has_one(ds.class_names.size(), 0);
  for (long r = 0; r < n; ++r) {
    (ds.binary_label(r) == 0 ? has_zero : has_one)[static_cast<size_t>(ds.traffic_type(r))] = 1;
  }
  int candidate = -1;
  bool unique = true;
  for (size_t i = 0; i < ds.class_names.size(); ++i) {
    if (has_zero[i] && !has_one[i]) {
      if (candidate >= 0) unique = false;
      candidate = static_cast<int>(i);
    } else if (has_zero[i] && has_one[i]) {
      unique = false;
    }
  }
  ds.normal_class_id = (unique && candidate >= 0) ? candidate : -1;
  ds.provenance = "loaded from " + origin;
  return ds;
}

Dataset load_dataset_csv(const std::string& path) {
  RawTable table = parse_csv(path, /*has_header=*/true);
  std::string base = path;
  if (size_t slash = base.find_last_of('/'); slash != std::string::npos) {
    base = base.substr(slash + 1);
  }
  return dataset_from_table(table, base);
}

}  // namespace idsample
