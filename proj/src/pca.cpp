#include "idsample/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "idsample/errors.hpp"
#include "idsample/jacobi.hpp"

namespace idsample {

namespace {

// Index of the largest-magnitude entry; the lowest index wins exact ties.
Eigen::Index dominant_axis(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  double best_abs = std::fabs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::fabs(v(i)) > best_abs) {
      best_abs = std::fabs(v(i));
      best = i;
    }
  }
  return best;
}

}  // namespace

PcaModel fit_pca(const Dataset& ds, int k, bool standardize) {
  const long n = ds.rows();
  const long d = ds.dims();
  if (n < 2) throw InputError("fit_pca: need at least 2 rows");
  if (k < 1 || k > d) {
    throw InputError("fit_pca: k=" + std::to_string(k) +
                     " out of range [1, " + std::to_string(d) + "]");
  }

  PcaModel model;
  model.k = k;
  model.standardized = standardize;
  model.mean = ds.features.colwise().mean();
  model.scale = Eigen::VectorXd::Ones(d);

  Eigen::MatrixXd centered = ds.features.rowwise() - model.mean.transpose();
  if (standardize) {
    for (long c = 0; c < d; ++c) {
      double sd = std::sqrt(centered.col(c).squaredNorm() / static_cast<double>(n - 1));
      if (sd > 0) {
        model.scale(c) = sd;
        centered.col(c) /= sd;
      }
    }
  }

  Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);
  model.total_variance = cov.trace();

  auto eig = jacobi_eigensymm(cov);

  // Descending by eigenvalue; near-ties (within 1e-12 of the trace) are
  // broken by the dominant axis of the eigenvector so degenerate spectra
  // stay deterministic.
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&eig](int a, int b) { return eig.values(a) > eig.values(b); });
  const double tie_eps = 1e-12 * std::max(model.total_variance, 0.0);
  for (size_t lo = 0; lo < order.size();) {
    size_t hi = lo + 1;
    while (hi < order.size() &&
           eig.values(order[hi - 1]) - eig.values(order[hi]) <= tie_eps) {
      ++hi;
    }
    if (hi - lo > 1) {
      std::sort(order.begin() + static_cast<long>(lo),
                order.begin() + static_cast<long>(hi), [&eig](int a, int b) {
                  return dominant_axis(eig.vectors.col(a)) <
                         dominant_axis(eig.vectors.col(b));
                });
    }
    lo = hi;
  }

  model.components.resize(k, d);
  model.eigenvalues.resize(k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = eig.vectors.col(order[static_cast<size_t>(i)]);
    if (v(dominant_axis(v)) < 0) v = -v;
    model.components.row(i) = v.transpose();
    model.eigenvalues(i) = std::max(eig.values(order[static_cast<size_t>(i)]), 0.0);
  }
  return model;
}

Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& rows) {
  if (rows.cols() != model.mean.size()) {
    throw SchemaMismatch("project: data has " + std::to_string(rows.cols()) +
                         " features, model expects " +
                         std::to_string(model.mean.size()));
  }
  Eigen::MatrixXd centered = rows.rowwise() - model.mean.transpose();
  if (model.standardized) {
    centered = centered * model.scale.cwiseInverse().asDiagonal();
  }
  return centered * model.components.transpose();
}

Eigen::MatrixXd project(const PcaModel& model, const Dataset& ds) {
  return project(model, ds.features);
}

VarianceSummary variance_summary(const PcaModel& model) {
  VarianceSummary summary;
  double running = 0;
  for (int i = 0; i < model.k; ++i) {
    double ratio =
        model.total_variance > 0 ? model.eigenvalues(i) / model.total_variance : 0.0;
    running += ratio;
    summary.per_dim_ratio.push_back(ratio);
    summary.cumulative.push_back(running);
  }
  summary.accumulative_variance = summary.cumulative.back();
  return summary;
}

SimilarityReport compare_pca(const Dataset& ds, const Dataset& sample, int k,
                             double alpha, PcaCompareMode mode, bool standardize) {
  if (ds.dims() != sample.dims()) {
    throw SchemaMismatch("compare_pca: feature dimensions differ (" +
                         std::to_string(ds.dims()) + " vs " +
                         std::to_string(sample.dims()) + ")");
  }
  Eigen::MatrixXd a, b;
  if (mode == PcaCompareMode::kShared) {
    PcaModel model = fit_pca(ds, k, standardize);
    a = project(model, ds);
    b = project(model, sample);
  } else {
    a = project(fit_pca(ds, k, standardize), ds);
    b = project(fit_pca(sample, k, standardize), sample);
  }
  std::vector<ZTestResult> results;
  results.reserve(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    results.push_back(z_test(a.col(j), b.col(j), "pc" + std::to_string(j + 1), alpha));
  }
  return assemble_report(SimilarityMethod::kPca, alpha, std::move(results));
}

std::string pca_model_to_json(const PcaModel& model) {
  nlohmann::json j;
  j["k"] = model.k;
  j["standardized"] = model.standardized;
  j["total_variance"] = model.total_variance;
  j["mean"] = std::vector<double>(model.mean.data(), model.mean.data() + model.mean.size());
  j["scale"] = std::vector<double>(model.scale.data(), model.scale.data() + model.scale.size());
  j["eigenvalues"] = std::vector<double>(model.eigenvalues.data(),
                                         model.eigenvalues.data() + model.eigenvalues.size());
  nlohmann::json comps = nlohmann::json::array();
  for (int i = 0; i < model.k; ++i) {
    Eigen::VectorXd row = model.components.row(i);
    comps.push_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  j["components"] = std::move(comps);
  return j.dump(2) + "\n";
}

}  // namespace idsample
