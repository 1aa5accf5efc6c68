#include <doctest.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "idsample/csv.hpp"
#include "idsample/errors.hpp"
#include "idsample/ingest.hpp"
#include "test_util.hpp"

using namespace idsample;

TEST_CASE("parse_csv_text reads a header and two records") {
  RawTable table = parse_csv_text("a,b\n1,x\n2,y\n", true, "mem");
  CHECK(table.column_names == std::vector<std::string>{"a", "b"});
  CHECK(table.row_count == 2);
  CHECK(table.columns[0] == std::vector<std::string>{"1", "2"});
  CHECK(table.columns[1] == std::vector<std::string>{"x", "y"});
  CHECK(table.column_index("b") == 1);
  CHECK(table.column_index("nope") == -1);
}

TEST_CASE("parse_csv_text handles quoting, CRLF, and a BOM") {
  const std::string text =
      "\xEF\xBB\xBFname,note\r\n\"x,y\",\"he said \"\"hi\"\"\"\r\nplain,\"multi\nline\"\r\n";
  RawTable table = parse_csv_text(text, true, "mem");
  CHECK(table.column_names[0] == "name");
  CHECK(table.row_count == 2);
  CHECK(table.columns[0][0] == "x,y");
  CHECK(table.columns[1][0] == "he said \"hi\"");
  CHECK(table.columns[1][1] == "multi\nline");
}

TEST_CASE("parse_csv_text without a header invents column names") {
  RawTable table = parse_csv_text("1,2,3\n4,5,6\n", false, "mem");
  CHECK(table.column_names == std::vector<std::string>{"col0", "col1", "col2"});
  CHECK(table.row_count == 2);
}

TEST_CASE("parse_csv_text error paths") {
  CHECK_THROWS_WITH_AS(parse_csv_text("", true, "mem"), "mem: no rows",
                       InputError);
  CHECK_THROWS_WITH_AS(parse_csv_text("a,b\n", true, "mem"), "mem: no rows",
                       InputError);
  CHECK_THROWS_WITH_AS(parse_csv_text("a,b\n1\n", true, "mem"),
                       "mem: ragged row 2: expected 2 fields, got 1",
                       InputError);
  CHECK_THROWS_WITH_AS(parse_csv_text("a,a\n1,2\n", true, "mem"),
                       "mem: duplicate column name 'a'", InputError);
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(1e300) == "1e+300");
  // round-trip property on awkward values
  for (double v : {1.0 / 3.0, 0.6032997678348193, 2.2250738585072014e-308}) {
    auto parsed = parse_double(format_double(v));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == v);
  }
}

TEST_CASE("parse_double accepts finite reals only") {
  CHECK(parse_double("2.5") == 2.5);
  CHECK(parse_double(" +3 ") == 3.0);
  CHECK(parse_double("1e4") == 10000.0);
  CHECK_FALSE(parse_double("").has_value());
  CHECK_FALSE(parse_double("abc").has_value());
  CHECK_FALSE(parse_double("1.5x").has_value());
  CHECK_FALSE(parse_double("nan").has_value());
  CHECK_FALSE(parse_double("inf").has_value());
}

TEST_CASE("infer_schema detects numeric and categorical columns") {
  RawTable table =
      parse_csv_text("num,proto,cls\n1,tcp,normal\n2.5,udp,dos\n3,tcp,normal\n",
                     true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal");
  CHECK(schema.kinds.at("num") == ColumnKind::kNumeric);
  CHECK(schema.kinds.at("proto") == ColumnKind::kCategorical);
  CHECK(schema.kinds.at("cls") == ColumnKind::kTrafficType);
  CHECK(schema.traffic_type_column == "cls");
  CHECK(schema.normal_class_name == "normal");
  CHECK(schema.label_mapping.at("normal") == 0);
  CHECK(schema.label_mapping.at("dos") == 1);
}

TEST_CASE("infer_schema maps every non-normal class to 1") {
  RawTable table = parse_csv_text(
      "cls\nnormal.\nneptune.\nsmurf.\nnormal.\nteardrop.\n", true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal.");
  CHECK(schema.label_mapping.size() == 4);
  CHECK(schema.label_mapping.at("normal.") == 0);
  CHECK(schema.label_mapping.at("neptune.") == 1);
  CHECK(schema.label_mapping.at("smurf.") == 1);
  CHECK(schema.label_mapping.at("teardrop.") == 1);
}

TEST_CASE("infer_schema rejects a missing traffic column") {
  RawTable table = parse_csv_text("a\n1\n", true, "mem");
  CHECK_THROWS_AS(infer_schema(table, "cls", "normal"), InputError);
}

TEST_CASE("schema overrides re-kind columns and set reserved keys") {
  const std::string dir = testutil::temp_dir("schema");
  const std::string path = testutil::path_join(dir, "schema.txt");
  testutil::write_file(path,
                       "# comment line\n"
                       "port=categorical\n"
                       "junk=drop\n"
                       "traffic_type=cls\n"
                       "normal=normal\n");
  SchemaOverrides overrides = load_schema_overrides(path);
  CHECK(overrides.kinds.at("port") == ColumnKind::kCategorical);
  CHECK(overrides.kinds.at("junk") == ColumnKind::kDrop);
  CHECK(overrides.traffic_type_column == "cls");
  CHECK(overrides.normal_class_name == "normal");

  RawTable table = parse_csv_text("port,junk,cls\n80,a,normal\n443,b,dos\n",
                                  true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal", overrides);
  CHECK(schema.kinds.at("port") == ColumnKind::kCategorical);
  CHECK(schema.kinds.at("junk") == ColumnKind::kDrop);

  SchemaOverrides bad;
  bad.kinds["cls"] = ColumnKind::kNumeric;
  CHECK_THROWS_AS(infer_schema(table, "cls", "normal", bad), InputError);
  SchemaOverrides unknown;
  unknown.kinds["nope"] = ColumnKind::kDrop;
  CHECK_THROWS_AS(infer_schema(table, "cls", "normal", unknown), InputError);
}

TEST_CASE("encode ranks categorical values lexicographically") {
  RawTable table =
      parse_csv_text("proto,cls\nudp,normal\ntcp,dos\nudp,normal\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal"));
  REQUIRE(ds.dims() == 1);
  CHECK(ds.features(0, 0) == 1.0);  // tcp < udp
  CHECK(ds.features(1, 0) == 0.0);
  CHECK(ds.features(2, 0) == 1.0);
}

TEST_CASE("encode derives binary labels from the traffic type") {
  RawTable table = parse_csv_text("x,cls\n1,normal.\n2,neptune.\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal."));
  CHECK(ds.binary_label(0) == 0);
  CHECK(ds.binary_label(1) == 1);
  // class ids are lexicographic ranks of the class names
  CHECK(ds.class_names == std::vector<std::string>{"neptune.", "normal."});
  CHECK(ds.traffic_type(0) == 1);
  CHECK(ds.traffic_type(1) == 0);
  CHECK(ds.normal_class_id == 1);
}

TEST_CASE("encode copies numeric columns bit-for-bit") {
  RawTable table = parse_csv_text(
      "a,b,cls\n0.1,-3e2,normal\n2.25,0.6032997678348193,dos\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal"));
  CHECK(ds.features(0, 0) == 0.1);
  CHECK(ds.features(0, 1) == -300.0);
  CHECK(ds.features(1, 0) == 2.25);
  CHECK(ds.features(1, 1) == 0.6032997678348193);
}

TEST_CASE("encode reports the cell behind a numeric parse failure") {
  // column 'a' infers numeric (empty cells are ignored for inference), but
  // an empty cell in a numeric column is a hard error, not an imputation
  RawTable table = parse_csv_text("a,cls\n1,normal\n,dos\n", true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal");
  REQUIRE(schema.kinds.at("a") == ColumnKind::kNumeric);
  CHECK_THROWS_WITH_AS(encode(table, schema),
                       "column 'a', row 2: cannot parse '' as a number",
                       InputError);
}

TEST_CASE("encode honors an explicit binary_label column") {
  RawTable table =
      parse_csv_text("x,lbl,cls\n1,0,normal\n2,1,dos\n3,1,normal\n", true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal");
  schema.kinds["lbl"] = ColumnKind::kBinaryLabel;
  Dataset ds = encode(table, schema);
  CHECK(ds.dims() == 1);  // the label column is not a feature
  CHECK(ds.binary_label(2) == 1);  // explicit column wins over the mapping
}

TEST_CASE("dedup keeps first occurrences in order") {
  // rows 2 and 4 (1-based) duplicate row 1; survivors are rows {1,3,5}
  RawTable table = parse_csv_text(
      "a,cls\n7,normal\n7,normal\n8,dos\n7,normal\n9,dos\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal"));
  Dataset out = dedup(ds);
  REQUIRE(out.rows() == 3);
  CHECK(out.features(0, 0) == 7.0);
  CHECK(out.features(1, 0) == 8.0);
  CHECK(out.features(2, 0) == 9.0);
  CHECK(out.provenance.find("removed 2 duplicate rows") != std::string::npos);
}

TEST_CASE("dedup is idempotent and keeps distinct-label twins") {
  RawTable table = parse_csv_text("a,cls\n1,normal\n1,dos\n2,dos\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal"));
  Dataset once = dedup(ds);
  CHECK(once.rows() == 3);  // same features, different labels: both stay
  Dataset twice = dedup(once);
  CHECK(twice.rows() == once.rows());
  CHECK(twice.features == once.features);
  CHECK(twice.binary_label == once.binary_label);
}

TEST_CASE("dedup folds negative zero into positive zero") {
  Dataset ds = testutil::make_by_counts({2}, {"only"}, 0, 1, 1);
  ds.features(0, 0) = 0.0;
  ds.features(1, 0) = -0.0;
  CHECK(dedup(ds).rows() == 1);
}

TEST_CASE("drop_constant_columns removes exactly the flat columns") {
  std::vector<int> traffic(10, 0);
  Dataset ds = testutil::make_dataset(traffic, {"only"}, 0, 40, 3);
  ds.features.col(4).setZero();      // the NSL-style all-zero column
  ds.features.col(17).setConstant(9);
  Dataset out = drop_constant_columns(ds);
  CHECK(out.dims() == 38);
  CHECK(out.provenance.find("f4") != std::string::npos);
  CHECK(out.provenance.find("f17") != std::string::npos);
  for (const auto& name : out.feature_names) {
    CHECK(name != "f4");
    CHECK(name != "f17");
  }
  // idempotent, and a column with two distinct values survives
  Dataset again = drop_constant_columns(out);
  CHECK(again.dims() == out.dims());
}

TEST_CASE("drop_constant_columns keeps a barely varying column") {
  Dataset ds = testutil::make_by_counts({3}, {"only"}, 0, 2, 5);
  ds.features.col(0) << 0, 0, 1;
  CHECK(drop_constant_columns(ds).dims() == 2);
}

TEST_CASE("drop_constant_columns rejects an all-constant dataset") {
  Dataset ds = testutil::make_by_counts({3}, {"only"}, 0, 2, 5);
  ds.features.setConstant(1.0);
  CHECK_THROWS_WITH_AS(drop_constant_columns(ds), "no informative features",
                       InputError);
}

TEST_CASE("encode is deterministic") {
  RawTable table = parse_csv_text(
      "a,proto,cls\n1,tcp,normal\n2,udp,dos\n3,icmp,probe\n", true, "mem");
  SchemaSpec schema = infer_schema(table, "cls", "normal");
  Dataset first = encode(table, schema);
  Dataset second = encode(table, schema);
  CHECK(first.features == second.features);
  CHECK(first.binary_label == second.binary_label);
  CHECK(first.traffic_type == second.traffic_type);
  CHECK(first.class_names == second.class_names);
  CHECK(dataset_to_csv(first) == dataset_to_csv(second));
}

TEST_CASE("binary label is 0 exactly on the normal class") {
  RawTable table = parse_csv_text(
      "x,cls\n1,a\n2,normal\n3,b\n4,normal\n5,c\n", true, "mem");
  Dataset ds = encode(table, infer_schema(table, "cls", "normal"));
  for (long r = 0; r < ds.rows(); ++r) {
    CHECK((ds.binary_label(r) == 0) ==
          (ds.class_name(ds.traffic_type(r)) == "normal"));
  }
}

TEST_CASE("dataset CSV serialization round-trips") {
  Dataset ds = testutil::make_by_counts({4, 3, 2}, {"dos", "normal", "probe"},
                                        1, 3, 11);
  ds.features(0, 0) = 1.0 / 3.0;  // exercise shortest-round-trip formatting
  const std::string dir = testutil::temp_dir("roundtrip");
  const std::string path = testutil::path_join(dir, "ds.csv");
  save_dataset_csv(ds, path);
  Dataset back = load_dataset_csv(path);
  CHECK(back.features == ds.features);
  CHECK(back.binary_label == ds.binary_label);
  CHECK(back.traffic_type == ds.traffic_type);
  CHECK(back.class_names == ds.class_names);
  CHECK(back.feature_names == ds.feature_names);
  CHECK(back.normal_class_id == ds.normal_class_id);
}

TEST_CASE("dataset_from_table requires the label columns") {
  RawTable table = parse_csv_text("a,b\n1,2\n", true, "mem");
  CHECK_THROWS_AS(dataset_from_table(table, "mem"), InputError);
}

TEST_CASE("select_rows copies rows in the requested order") {
  Dataset ds = testutil::make_by_counts({2, 2}, {"a", "b"}, 0, 2, 21);
  Dataset out = select_rows(ds, {3, 0});
  REQUIRE(out.rows() == 2);
  CHECK(out.features.row(0) == ds.features.row(3));
  CHECK(out.features.row(1) == ds.features.row(0));
  CHECK(out.traffic_type(0) == ds.traffic_type(3));
  CHECK(out.class_names == ds.class_names);
}
