#include "idsample/stats.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "idsample/errors.hpp"

namespace idsample {

std::string SimilarityReport::summary() const {
  if (overall_similar) return "similar";
  return std::to_string(n_similar) + " similar, " + std::to_string(n_different) +
         " different features";
}

ZTestResult z_test(Eigen::Ref<const Eigen::VectorXd> a,
                   Eigen::Ref<const Eigen::VectorXd> b,
                   const std::string& dimension_name, double alpha) {
  if (a.size() < 2 || b.size() < 2) {
    throw InputError("z_test('" + dimension_name +
                     "'): both samples need at least 2 values");
  }
  ZTestResult r;
  r.dimension_name = dimension_name;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = a.mean();
  r.mean_b = b.mean();
  r.variance_a = (a.array() - r.mean_a).square().sum() / static_cast<double>(r.n_a - 1);
  r.variance_b = (b.array() - r.mean_b).square().sum() / static_cast<double>(r.n_b - 1);

  const double denom = r.variance_a / static_cast<double>(r.n_a) +
                       r.variance_b / static_cast<double>(r.n_b);
  if (denom > 0.0) {
    r.z_statistic = (r.mean_a - r.mean_b) / std::sqrt(denom);
    // p = 2*(1 - Phi(|z|)); erfc keeps precision in the far tail.
    r.p_value = std::erfc(std::fabs(r.z_statistic) / std::sqrt(2.0));
  } else if (r.mean_a == r.mean_b) {
    r.z_statistic = 0.0;
    r.p_value = 1.0;
  } else {
    r.z_statistic = std::numeric_limits<double>::quiet_NaN();
    r.p_value = 0.0;
  }
  r.similar = r.p_value >= alpha;
  return r;
}

SimilarityReport assemble_report(SimilarityMethod method, double alpha,
                                 std::vector<ZTestResult> per_dimension) {
  SimilarityReport report;
  report.method = method;
  report.alpha = alpha;
  report.per_dimension = std::move(per_dimension);
  for (const ZTestResult& r : report.per_dimension) {
    if (r.similar)
      ++report.n_similar;
    else
      ++report.n_different;
  }
  report.overall_similar = report.n_different == 0;
  return report;
}

SimilarityReport compare_all_features(const Dataset& ds, const Dataset& sample,
                                      double alpha) {
  if (ds.feature_names != sample.feature_names) {
    throw SchemaMismatch("compare_all_features: feature names differ");
  }
  std::vector<ZTestResult> results;
  results.reserve(static_cast<size_t>(ds.dims()));
  for (long c = 0; c < ds.dims(); ++c) {
    results.push_back(z_test(ds.features.col(c), sample.features.col(c),
                             ds.feature_names[static_cast<size_t>(c)], alpha));
  }
  return assemble_report(SimilarityMethod::kAllFeatures, alpha, std::move(results));
}

std::string report_to_json(const SimilarityReport& report) {
  nlohmann::json j;
  j["method"] = report.method == SimilarityMethod::kAllFeatures ? "all_features" : "pca";
  j["alpha"] = report.alpha;
  j["n_similar"] = report.n_similar;
  j["n_different"] = report.n_different;
  j["overall_similar"] = report.overall_similar;
  j["summary"] = report.summary();
  nlohmann::json dims = nlohmann::json::array();
  for (const ZTestResult& r : report.per_dimension) {
    nlohmann::json d;
    d["name"] = r.dimension_name;
    d["mean_a"] = r.mean_a;
    d["mean_b"] = r.mean_b;
    d["variance_a"] = r.variance_a;
    d["variance_b"] = r.variance_b;
    d["n_a"] = r.n_a;
    d["n_b"] = r.n_b;
    if (std::isnan(r.z_statistic)) {
      d["z"] = nullptr;  // undefined: zero variances with unequal means
    } else {
      d["z"] = r.z_statistic;
    }
    d["p"] = r.p_value;
    d["similar"] = r.similar;
    dims.push_back(std::move(d));
  }
  j["dimensions"] = std::move(dims);
  return j.dump(2) + "\n";
}

}  // namespace idsample
