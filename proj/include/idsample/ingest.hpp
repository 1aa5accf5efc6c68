#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idsample/csv.hpp"

namespace idsample {

enum class ColumnKind { kNumeric, kCategorical, kTrafficType, kBinaryLabel, kDrop };

const char* to_string(ColumnKind kind);
std::optional<ColumnKind> parse_column_kind(std::string_view text);

// Per-column roles plus the normal/attack label mapping.
struct SchemaSpec {
  std::map<std::string, ColumnKind> kinds;
  std::map<std::string, int> label_mapping;  // traffic-type text -> 0/1
  std::string traffic_type_column;
  std::string normal_class_name;
};

// Analysis-ready form: a dense feature matrix with the two label columns
// kept separately. Immutable by convention once built.
struct Dataset {
  Eigen::MatrixXd features;               // rows = records
  std::vector<std::string> feature_names;
  Eigen::VectorXi binary_label;           // 0 = normal, 1 = attack
  Eigen::VectorXi traffic_type;           // ids into class_names
  std::vector<std::string> class_names;
  int normal_class_id = -1;               // -1 when not identifiable
  std::string provenance;

  long rows() const { return features.rows(); }
  long dims() const { return features.cols(); }
  const std::string& class_name(int id) const { return class_names.at(static_cast<size_t>(id)); }
};

// Schema override file: `column=kind` lines plus `traffic_type=<col>` and
// `normal=<name>`. '#' starts a comment.
struct SchemaOverrides {
  std::map<std::string, ColumnKind> kinds;
  std::optional<std::string> traffic_type_column;
  std::optional<std::string> normal_class_name;
};

SchemaOverrides load_schema_overrides(const std::string& path);

// A column is numeric iff every non-empty entry parses as a finite real;
// otherwise categorical. The named traffic-type column gets that kind, and
// the label mapping sends normal_class_name to 0 and every other observed
// class to 1.
SchemaSpec infer_schema(const RawTable& table,
                        const std::string& traffic_type_column,
                        const std::string& normal_class_name);

// infer_schema followed by per-column kind overrides.
SchemaSpec infer_schema(const RawTable& table,
                        const std::string& traffic_type_column,
                        const std::string& normal_class_name,
                        const SchemaOverrides& overrides);

// Numeric columns copy through; categorical columns become the 0-based rank
// of each value among the column's lexicographically sorted distinct values;
// drop columns vanish. Binary labels come from a binary_label column when
// one exists, otherwise from the label mapping.
Dataset encode(const RawTable& table, const SchemaSpec& schema);

// Copies the given rows (in the given order) into a new Dataset. Metadata
// and provenance carry over unchanged.
Dataset select_rows(const Dataset& ds, const std::vector<long>& rows);

// Keeps the first occurrence of each distinct (features row, binary label,
// traffic type) tuple, in original order.
Dataset dedup(const Dataset& ds);

// Removes every feature column whose values are all identical.
Dataset drop_constant_columns(const Dataset& ds);

// Encoded-CSV serialization: feature columns plus `__label` and `__type`.
void save_dataset_csv(const Dataset& ds, const std::string& path);
std::string dataset_to_csv(const Dataset& ds);
Dataset load_dataset_csv(const std::string& path);
Dataset dataset_from_table(const RawTable& table, const std::string& origin);

// Strict finite-real parse used for numeric cells. Tolerates surrounding
// ASCII whitespace and a leading '+'.
std::optional<double> parse_double(std::string_view text);

}  // namespace idsample
