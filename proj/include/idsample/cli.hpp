#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "idsample/pca.hpp"
#include "idsample/report.hpp"
#include "idsample/sampling.hpp"

namespace idsample {

// Everything a pipeline command needs; each command reads the subset it
// cares about. CLI flags > config file > defaults.
struct RunConfig {
  std::string input_path;
  std::vector<std::string> extra_inputs;  // report: additional datasets
  std::string sample_path;                // validate: candidate sample
  std::string schema_path;
  std::string output_dir;
  std::string class_column;               // preprocess: traffic-type column
  std::string normal_name;                // preprocess: the normal class value
  bool has_header = true;
  std::uint64_t seed = 0;
  double sample_fraction = 0.5;
  std::optional<long> num_override;       // absolute sample size, beats fraction
  double alpha = 0.05;
  int pca_k = 3;
  PcaCompareMode pca_mode = PcaCompareMode::kShared;
  int max_attempts = 100;
  bool standardize = false;
};

PcaCompareMode parse_pca_mode(const std::string& text);
const char* to_string(PcaCompareMode mode);

struct PreprocessResult {
  Dataset dataset;
  long rows_in = 0;
  long duplicates_removed = 0;
  std::vector<std::string> dropped_columns;
};

struct ReportResult {
  std::vector<std::string> input_names;      // basenames without extension
  std::vector<VarianceSummary> summaries;    // one per input
};

// Pipeline commands. Each writes its artifact bundle into output_dir and
// returns the in-memory result for callers that want it. All throw the
// error types in errors.hpp; use guard_run to map them to exit codes.
PreprocessResult run_preprocess(const RunConfig& config);
SampleOutcome run_sample(const RunConfig& config);
BalanceOutcome run_balance(const RunConfig& config);
ComparisonEntry run_validate(const RunConfig& config);
ReportResult run_report(const RunConfig& config);

// Runs a command body, printing any error to stderr and mapping it to the
// documented exit codes: 0 ok, 2 input, 3 sampling exhausted, 4 schema
// mismatch, 5 numeric or internal failure.
int guard_run(const std::function<void()>& body);

}  // namespace idsample
