#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "idsample/ingest.hpp"
#include "idsample/special.hpp"

namespace idsample {

// Two-sample Z-test of means. z_statistic is NaN when both variances are
// zero and the means differ (p is then 0).
struct ZTestResult {
  std::string dimension_name;
  double mean_a = 0, mean_b = 0;
  double variance_a = 0, variance_b = 0;
  long n_a = 0, n_b = 0;
  double z_statistic = 0;
  double p_value = 1;
  bool similar = true;
};

enum class SimilarityMethod { kAllFeatures, kPca };

struct SimilarityReport {
  SimilarityMethod method = SimilarityMethod::kAllFeatures;
  double alpha = 0.05;
  std::vector<ZTestResult> per_dimension;
  int n_similar = 0;
  int n_different = 0;
  bool overall_similar = true;

  // "similar" or "N similar, M different features".
  std::string summary() const;
};

// Sample variances (n-1 divisor), two-tailed p-value against the standard
// normal, similar iff p >= alpha. Both inputs need at least 2 entries.
ZTestResult z_test(Eigen::Ref<const Eigen::VectorXd> a,
                   Eigen::Ref<const Eigen::VectorXd> b,
                   const std::string& dimension_name, double alpha);

// One z_test per feature column; label columns are not features and take
// no part. Throws SchemaMismatch unless feature names are identical.
SimilarityReport compare_all_features(const Dataset& ds, const Dataset& sample,
                                      double alpha);

// Builds a report from per-dimension results, tallying the verdicts.
SimilarityReport assemble_report(SimilarityMethod method, double alpha,
                                 std::vector<ZTestResult> per_dimension);

// JSON serialization mirroring the comparison-table shape.
std::string report_to_json(const SimilarityReport& report);

}  // namespace idsample
