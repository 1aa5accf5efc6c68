#include "idsample/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "idsample/errors.hpp"

namespace idsample {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.output_dir) / name).string();
}

void ensure_output_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw InputError("cannot create output directory '" + config.output_dir +
                     "': " + ec.message());
  }
}

void check_config(const RunConfig& config) {
  if (config.input_path.empty()) throw InputError("--input is required");
  if (config.output_dir.empty()) throw InputError("--out is required");
  if (!(config.sample_fraction > 0.0) || config.sample_fraction > 1.0) {
    throw InputError("--fraction must be in (0, 1]");
  }
  if (!(config.alpha > 0.0) || !(config.alpha < 1.0)) {
    throw InputError("--alpha must be in (0, 1)");
  }
  if (config.pca_k < 1) throw InputError("--pca-k must be at least 1");
  if (config.max_attempts < 1) throw InputError("--max-attempts must be at least 1");
  if (config.num_override && *config.num_override < 1) {
    throw InputError("--num must be at least 1");
  }
}

SampleRecipe recipe_from(const RunConfig& config) {
  SampleRecipe recipe;
  recipe.seed = config.seed;
  recipe.similarity_alpha = config.alpha;
  recipe.max_attempts = config.max_attempts;
  return recipe;
}

std::string verdict_line(const SampleOutcome& outcome) {
  if (outcome.trivial_check || !outcome.verdict) {
    return "similarity: trivial (single traffic class)";
  }
  const SimilarityVerdict& v = *outcome.verdict;
  return std::string("similarity: chi2=") + format_double(v.statistic) +
         " threshold=" + format_double(v.threshold) +
         " df=" + std::to_string(v.degrees_of_freedom) +
         " similar=" + (v.similar ? "yes" : "no");
}

json verdict_json(const SampleOutcome& outcome) {
  if (outcome.trivial_check || !outcome.verdict) return nullptr;
  const SimilarityVerdict& v = *outcome.verdict;
  json j;
  j["chi2"] = v.statistic;
  j["threshold"] = v.threshold;
  j["df"] = v.degrees_of_freedom;
  j["merged_classes"] = v.merged_classes;
  j["similar"] = v.similar;
  return j;
}

// The four per-sample tables: class counts and pie fractions at both label
// granularities.
json write_distribution_family(const Dataset& ds, const std::string& prefix,
                               const RunConfig& config) {
  LabelDistribution traffic = label_distribution(ds, Granularity::kTrafficType);
  LabelDistribution binary = label_distribution(ds, Granularity::kBinary);
  const auto traffic_names = traffic_class_names(ds);
  const auto binary_names = binary_class_names();

  const std::string dist_traffic = prefix + "_distribution_traffic.csv";
  const std::string dist_binary = prefix + "_distribution_binary.csv";
  const std::string pie_traffic = prefix + "_pie_traffic.csv";
  const std::string pie_binary = prefix + "_pie_binary.csv";

  write_text_file(out_path(config, dist_traffic),
                  distribution_table_to_csv(render_distribution_table(
                      traffic, traffic_names, prefix + " traffic classes")));
  write_text_file(out_path(config, dist_binary),
                  distribution_table_to_csv(render_distribution_table(
                      binary, binary_names, prefix + " binary classes")));
  write_text_file(out_path(config, pie_traffic),
                  pie_fractions_to_csv(traffic, traffic_names, ds.normal_class_id));
  write_text_file(out_path(config, pie_binary),
                  pie_fractions_to_csv(binary, binary_names, 0));

  json outputs;
  outputs["distribution_traffic"] = dist_traffic;
  outputs["distribution_binary"] = dist_binary;
  outputs["pie_traffic"] = pie_traffic;
  outputs["pie_binary"] = pie_binary;
  return outputs;
}

void write_index(const RunConfig& config, const std::string& name, const json& j) {
  write_text_file(out_path(config, name), j.dump(2) + "\n");
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

PcaCompareMode parse_pca_mode(const std::string& text) {
  if (text == "shared") return PcaCompareMode::kShared;
  if (text == "independent") return PcaCompareMode::kIndependent;
  throw InputError("unknown pca mode '" + text + "' (expected shared or independent)");
}

const char* to_string(PcaCompareMode mode) {
  return mode == PcaCompareMode::kShared ? "shared" : "independent";
}

PreprocessResult run_preprocess(const RunConfig& config) {
  check_config(config);
  RawTable table = parse_csv(config.input_path, config.has_header);

  SchemaOverrides overrides;
  if (!config.schema_path.empty()) {
    overrides = load_schema_overrides(config.schema_path);
  }
  const std::string traffic_column = !config.class_column.empty()
                                         ? config.class_column
                                         : overrides.traffic_type_column.value_or("");
  const std::string normal_name = !config.normal_name.empty()
                                      ? config.normal_name
                                      : overrides.normal_class_name.value_or("");
  if (traffic_column.empty()) {
    throw InputError(
        "traffic-type column not given (use --class-column or a schema file "
        "with traffic_type=<column>)");
  }
  if (normal_name.empty()) {
    throw InputError(
        "normal class not given (use --normal or a schema file with "
        "normal=<value>)");
  }

  SchemaSpec schema = infer_schema(table, traffic_column, normal_name, overrides);
  Dataset encoded = encode(table, schema);
  Dataset deduped = dedup(encoded);

  PreprocessResult result;
  result.rows_in = encoded.rows();
  result.duplicates_removed = encoded.rows() - deduped.rows();
  result.dataset = drop_constant_columns(deduped);
  {
    std::vector<std::string> kept = result.dataset.feature_names;
    std::sort(kept.begin(), kept.end());
    for (const auto& name : deduped.feature_names) {
      if (!std::binary_search(kept.begin(), kept.end(), name)) {
        result.dropped_columns.push_back(name);
      }
    }
  }

  ensure_output_dir(config);
  save_dataset_csv(result.dataset, out_path(config, "preprocessed.csv"));

  std::string report;
  report += "input: " + basename_of(config.input_path) + "\n";
  report += "traffic-type column: " + traffic_column + "\n";
  report += "normal class: " + normal_name + "\n";
  report += "rows read: " + std::to_string(result.rows_in) + "\n";
  report += "duplicate rows removed: " + std::to_string(result.duplicates_removed) + "\n";
  report += "constant feature columns dropped: " +
            std::to_string(result.dropped_columns.size());
  if (!result.dropped_columns.empty()) {
    report += " (" + join_names(result.dropped_columns) + ")";
  }
  report += "\n";
  report += "rows out: " + std::to_string(result.dataset.rows()) + "\n";
  report += "feature columns out: " + std::to_string(result.dataset.dims()) + "\n";
  report += "traffic classes: " + std::to_string(result.dataset.class_names.size()) + "\n";
  write_text_file(out_path(config, "preprocess_report.txt"), report);

  json index;
  index["command"] = "preprocess";
  index["input"] = basename_of(config.input_path);
  index["traffic_type_column"] = traffic_column;
  index["normal_class"] = normal_name;
  index["rows_in"] = result.rows_in;
  index["rows_out"] = result.dataset.rows();
  index["duplicates_removed"] = result.duplicates_removed;
  index["dropped_columns"] = result.dropped_columns;
  index["features_out"] = result.dataset.dims();
  index["traffic_classes"] = result.dataset.class_names.size();
  index["outputs"] = {{"dataset", "preprocessed.csv"},
                      {"report", "preprocess_report.txt"}};
  write_index(config, "index_preprocess.json", index);
  return result;
}

SampleOutcome run_sample(const RunConfig& config) {
  check_config(config);
  Dataset ds = load_dataset_csv(config.input_path);
  const long num = config.num_override
                       ? *config.num_override
                       : std::llround(config.sample_fraction *
                                      static_cast<double>(ds.rows()));

  SampleOutcome outcome = get_sample_outcome(ds, num, recipe_from(config));

  ensure_output_dir(config);
  save_dataset_csv(outcome.sample, out_path(config, "sample.csv"));

  std::string prov;
  prov += "command: sample\n";
  prov += "input: " + basename_of(config.input_path) + "\n";
  prov += "rows: " + std::to_string(ds.rows()) + "\n";
  if (config.num_override) {
    prov += "num: " + std::to_string(num) + " (explicit)\n";
  } else {
    prov += "fraction: " + format_double(config.sample_fraction) + "\n";
    prov += "num: " + std::to_string(num) + "\n";
  }
  prov += "seed: " + std::to_string(config.seed) + "\n";
  prov += "alpha: " + format_double(config.alpha) + "\n";
  prov += "max_attempts: " + std::to_string(config.max_attempts) + "\n";
  prov += "attempts: " + std::to_string(outcome.attempts) + "\n";
  prov += verdict_line(outcome) + "\n";
  prov += "history:\n" + outcome.sample.provenance + "\n";
  write_text_file(out_path(config, "sample.provenance.txt"), prov);

  json outputs = write_distribution_family(outcome.sample, "sample", config);
  outputs["sample"] = "sample.csv";
  outputs["provenance"] = "sample.provenance.txt";

  json index;
  index["command"] = "sample";
  index["input"] = basename_of(config.input_path);
  index["rows_in"] = ds.rows();
  index["num"] = num;
  if (!config.num_override) index["fraction"] = config.sample_fraction;
  index["seed"] = config.seed;
  index["alpha"] = config.alpha;
  index["max_attempts"] = config.max_attempts;
  index["attempts"] = outcome.attempts;
  index["trivial_check"] = outcome.trivial_check;
  index["verdict"] = verdict_json(outcome);
  index["outputs"] = outputs;
  write_index(config, "index_sample.json", index);
  return outcome;
}

BalanceOutcome run_balance(const RunConfig& config) {
  check_config(config);
  Dataset ds = load_dataset_csv(config.input_path);

  BalanceOutcome outcome = get_balanced_sample_outcome(ds, recipe_from(config));

  ensure_output_dir(config);
  save_dataset_csv(outcome.sample, out_path(config, "balanced.csv"));

  std::string prov;
  prov += "command: balance\n";
  prov += "input: " + basename_of(config.input_path) + "\n";
  prov += "rows: " + std::to_string(ds.rows()) + "\n";
  prov += "seed: " + std::to_string(config.seed) + "\n";
  prov += "alpha: " + format_double(config.alpha) + "\n";
  prov += "max_attempts: " + std::to_string(config.max_attempts) + "\n";
  prov += "minority label: " + std::to_string(outcome.minority_label) + "\n";
  prov += "minority count: " + std::to_string(outcome.minority_count) + "\n";
  if (outcome.tie) {
    prov += "tie: yes (classes already balanced, input returned unchanged)\n";
  } else {
    prov += "tie: no\n";
    prov += "majority attempts: " + std::to_string(outcome.majority.attempts) + "\n";
    prov += verdict_line(outcome.majority) + "\n";
  }
  prov += "history:\n" + outcome.sample.provenance + "\n";
  write_text_file(out_path(config, "balanced.provenance.txt"), prov);

  json outputs = write_distribution_family(outcome.sample, "balanced", config);
  outputs["sample"] = "balanced.csv";
  outputs["provenance"] = "balanced.provenance.txt";

  json index;
  index["command"] = "balance";
  index["input"] = basename_of(config.input_path);
  index["rows_in"] = ds.rows();
  index["rows_out"] = outcome.sample.rows();
  index["seed"] = config.seed;
  index["alpha"] = config.alpha;
  index["max_attempts"] = config.max_attempts;
  index["minority_label"] = outcome.minority_label;
  index["minority_count"] = outcome.minority_count;
  index["tie"] = outcome.tie;
  if (!outcome.tie) {
    index["attempts"] = outcome.majority.attempts;
    index["trivial_check"] = outcome.majority.trivial_check;
    index["verdict"] = verdict_json(outcome.majority);
  }
  index["outputs"] = outputs;
  write_index(config, "index_balance.json", index);
  return outcome;
}

ComparisonEntry run_validate(const RunConfig& config) {
  check_config(config);
  if (config.sample_path.empty()) {
    throw InputError("--sample is required for validate");
  }
  Dataset ds = load_dataset_csv(config.input_path);
  Dataset sample = load_dataset_csv(config.sample_path);
  const int k = static_cast<int>(
      std::min<long>(static_cast<long>(config.pca_k), ds.dims()));

  ComparisonEntry entry;
  entry.dataset_name = stem_of(config.input_path);
  entry.sample_name = stem_of(config.sample_path);
  entry.features = compare_all_features(ds, sample, config.alpha);
  entry.pca = compare_pca(ds, sample, k, config.alpha, config.pca_mode,
                          config.standardize);

  ensure_output_dir(config);
  write_text_file(out_path(config, "comparison_table.txt"),
                  render_comparison_table({entry}));
  write_text_file(out_path(config, "report_all_features.json"),
                  report_to_json(entry.features));
  write_text_file(out_path(config, "report_pca.json"), report_to_json(entry.pca));

  json index;
  index["command"] = "validate";
  index["dataset"] = entry.dataset_name;
  index["sample"] = entry.sample_name;
  index["alpha"] = config.alpha;
  index["pca_k"] = k;
  index["pca_mode"] = to_string(config.pca_mode);
  index["standardize"] = config.standardize;
  index["features"] = {{"overall_similar", entry.features.overall_similar},
                       {"n_similar", entry.features.n_similar},
                       {"n_different", entry.features.n_different}};
  index["pca"] = {{"overall_similar", entry.pca.overall_similar},
                  {"n_similar", entry.pca.n_similar},
                  {"n_different", entry.pca.n_different}};
  index["outputs"] = {{"comparison_table", "comparison_table.txt"},
                      {"features_report", "report_all_features.json"},
                      {"pca_report", "report_pca.json"}};
  write_index(config, "index_validate.json", index);
  return entry;
}

ReportResult run_report(const RunConfig& config) {
  check_config(config);
  std::vector<std::string> paths;
  paths.push_back(config.input_path);
  paths.insert(paths.end(), config.extra_inputs.begin(), config.extra_inputs.end());

  std::vector<Dataset> datasets;
  std::vector<std::string> names;
  datasets.reserve(paths.size());
  for (const auto& path : paths) {
    datasets.push_back(load_dataset_csv(path));
    names.push_back(stem_of(path));
  }
  for (size_t i = 0; i < names.size(); ++i) {
    for (size_t j = i + 1; j < names.size(); ++j) {
      if (names[i] == names[j]) {
        throw InputError("report inputs share the base name '" + names[i] +
                         "'; outputs would collide");
      }
    }
  }

  // Every input gets its own fitted model for the spectrum artifacts; the
  // projection model for point clouds follows pca_mode so shared mode draws
  // all clouds in one coordinate frame.
  std::vector<PcaModel> models;
  models.reserve(datasets.size());
  for (const auto& ds : datasets) {
    const int k = static_cast<int>(
        std::min<long>(static_cast<long>(config.pca_k), ds.dims()));
    models.push_back(fit_pca(ds, k, config.standardize));
  }

  ensure_output_dir(config);
  ReportResult result;
  result.input_names = names;

  std::string variance_text;
  json per_input = json::array();
  for (size_t i = 0; i < datasets.size(); ++i) {
    const Dataset& ds = datasets[i];
    VarianceSummary summary = variance_summary(models[i]);
    variance_text += variance_summary_line(names[i], summary) + "\n";
    result.summaries.push_back(std::move(summary));

    const std::string model_name = names[i] + "_pca_model.json";
    const std::string points_name = names[i] + "_points.csv";
    const std::string scatter_name = names[i] + "_scatter.svg";
    write_text_file(out_path(config, model_name), pca_model_to_json(models[i]));

    const PcaModel& projector =
        config.pca_mode == PcaCompareMode::kShared ? models[0] : models[i];
    Eigen::MatrixXd points = project(projector, ds);
    if (points.cols() < 3) {
      Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(points.rows(), 3);
      padded.leftCols(points.cols()) = points;
      points = std::move(padded);
    }

    const auto class_names = traffic_class_names(ds);
    write_text_file(out_path(config, points_name),
                    point_cloud_to_csv(points, ds.traffic_type, class_names));

    PlotSpec spec;
    spec.kind = PlotSpec::Kind::kScatter3dProjection;
    spec.data_path = points_name;
    for (const auto& [cls, name] : class_names) {
      (void)name;
      spec.color_map[cls] = color_for_class(cls, ds.normal_class_id);
    }
    emit_scatter_svg(points, ds.traffic_type, class_names, spec,
                     out_path(config, scatter_name));

    json entry;
    entry["input"] = names[i];
    entry["k"] = models[i].k;
    entry["model"] = model_name;
    entry["points"] = points_name;
    entry["scatter"] = scatter_name;
    per_input.push_back(entry);
  }
  write_text_file(out_path(config, "variance_summary.txt"), variance_text);

  json index;
  index["command"] = "report";
  index["inputs"] = names;
  index["pca_k"] = config.pca_k;
  index["pca_mode"] = to_string(config.pca_mode);
  index["standardize"] = config.standardize;
  if (config.pca_mode == PcaCompareMode::kShared) {
    index["projection_model"] = names[0];
  }
  index["outputs"] = {{"variance_summary", "variance_summary.txt"},
                      {"per_input", per_input}};
  write_index(config, "index_report.json", index);
  return result;
}

int guard_run(const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SamplingExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSamplingExhausted;
  } catch (const SchemaMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchemaMismatch;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumericError;
  }
}

}  // namespace idsample
