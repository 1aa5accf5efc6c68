#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idsample/cli.hpp"
#include "idsample/errors.hpp"

int main(int argc, char** argv) {
  using namespace idsample;

  RunConfig config;
  std::string pca_mode_text = "shared";
  bool no_header = false;
  std::vector<std::string> report_inputs;

  CLI::App app{
      "idsample: representative and class-balanced sampling for labeled "
      "tabular datasets, with statistical sample validation"};
  app.require_subcommand(1);
  app.footer(
      "Options may also come from the environment (prefix IDSAMPLE_, e.g. "
      "IDSAMPLE_SEED) or from --config; command-line flags win.");

  CLI::App* pre = app.add_subcommand(
      "preprocess", "parse a raw CSV, encode labels, drop duplicates and constant columns");
  pre->add_option("--input", config.input_path, "raw CSV file")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_INPUT");
  pre->add_option("--schema", config.schema_path,
                  "schema override file (column=kind lines, traffic_type=, normal=)")
      ->check(CLI::ExistingFile)->envname("IDSAMPLE_SCHEMA");
  pre->add_option("--out", config.output_dir, "output directory")
      ->required()->envname("IDSAMPLE_OUT");
  pre->add_option("--class-column", config.class_column,
                  "column holding the traffic-type label")
      ->envname("IDSAMPLE_CLASS_COLUMN");
  pre->add_option("--normal", config.normal_name,
                  "traffic-type value that marks normal records")
      ->envname("IDSAMPLE_NORMAL");
  pre->add_flag("--no-header", no_header, "input file has no header row")
      ->envname("IDSAMPLE_NO_HEADER");

  CLI::App* smp = app.add_subcommand(
      "sample", "draw a seeded representative sample of a preprocessed dataset");
  smp->add_option("--input", config.input_path, "preprocessed dataset CSV")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_INPUT");
  smp->add_option("--out", config.output_dir, "output directory")
      ->required()->envname("IDSAMPLE_OUT");
  smp->add_option("--seed", config.seed, "PRNG seed")->envname("IDSAMPLE_SEED");
  smp->add_option("--fraction", config.sample_fraction,
                  "sample size as a fraction of the input rows, in (0, 1]")
      ->envname("IDSAMPLE_FRACTION");
  smp->add_option("--num", config.num_override,
                  "absolute sample size (overrides --fraction)")
      ->envname("IDSAMPLE_NUM");
  smp->add_option("--alpha", config.alpha, "similarity significance level")
      ->envname("IDSAMPLE_ALPHA");
  smp->add_option("--max-attempts", config.max_attempts,
                  "permutations to try before giving up")
      ->envname("IDSAMPLE_MAX_ATTEMPTS");

  CLI::App* bal = app.add_subcommand(
      "balance", "build a class-balanced sample keeping every minority row");
  bal->add_option("--input", config.input_path, "preprocessed dataset CSV")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_INPUT");
  bal->add_option("--out", config.output_dir, "output directory")
      ->required()->envname("IDSAMPLE_OUT");
  bal->add_option("--seed", config.seed, "PRNG seed")->envname("IDSAMPLE_SEED");
  bal->add_option("--alpha", config.alpha, "similarity significance level")
      ->envname("IDSAMPLE_ALPHA");
  bal->add_option("--max-attempts", config.max_attempts,
                  "permutations to try before giving up")
      ->envname("IDSAMPLE_MAX_ATTEMPTS");

  CLI::App* val = app.add_subcommand(
      "validate", "compare a sample against its source with z-tests per feature and over a PCA projection");
  val->add_option("--input", config.input_path, "source dataset CSV")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_INPUT");
  val->add_option("--sample", config.sample_path, "sample dataset CSV")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_SAMPLE");
  val->add_option("--out", config.output_dir, "output directory")
      ->required()->envname("IDSAMPLE_OUT");
  val->add_option("--alpha", config.alpha, "z-test significance level")
      ->envname("IDSAMPLE_ALPHA");
  val->add_option("--pca-k", config.pca_k, "projection dimensions")
      ->envname("IDSAMPLE_PCA_K");
  val->add_option("--pca-mode", pca_mode_text, "shared or independent PCA fit")
      ->check(CLI::IsMember({"shared", "independent"}))
      ->envname("IDSAMPLE_PCA_MODE");
  val->add_flag("--standardize", config.standardize,
                "scale features to unit variance before PCA")
      ->envname("IDSAMPLE_STANDARDIZE");

  CLI::App* rep = app.add_subcommand(
      "report", "fit PCA per dataset and emit variance summaries, point clouds, and scatter SVGs");
  rep->add_option("--input", report_inputs, "preprocessed dataset CSVs")
      ->required()->check(CLI::ExistingFile)->envname("IDSAMPLE_INPUT");
  rep->add_option("--out", config.output_dir, "output directory")
      ->required()->envname("IDSAMPLE_OUT");
  rep->add_option("--pca-k", config.pca_k, "projection dimensions")
      ->envname("IDSAMPLE_PCA_K");
  rep->add_option("--pca-mode", pca_mode_text,
                  "shared projects every input through the first input's model")
      ->check(CLI::IsMember({"shared", "independent"}))
      ->envname("IDSAMPLE_PCA_MODE");
  rep->add_flag("--standardize", config.standardize,
                "scale features to unit variance before PCA")
      ->envname("IDSAMPLE_STANDARDIZE");

  app.set_config("--config", "",
                 "read options from a config file; keys live in a section "
                 "named after the command, e.g. [sample] seed=42");
  for (CLI::App* sub : {pre, smp, bal, val, rep}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(kExitInputError);
  }

  return guard_run([&] {
    config.has_header = !no_header;
    config.pca_mode = parse_pca_mode(pca_mode_text);
    if (!report_inputs.empty()) {
      config.input_path = report_inputs.front();
      config.extra_inputs.assign(report_inputs.begin() + 1, report_inputs.end());
    }
    if (pre->parsed()) {
      run_preprocess(config);
    } else if (smp->parsed()) {
      run_sample(config);
    } else if (bal->parsed()) {
      run_balance(config);
    } else if (val->parsed()) {
      run_validate(config);
    } else if (rep->parsed()) {
      run_report(config);
    } else {
      throw InputError("no command given");
    }
  });
}
