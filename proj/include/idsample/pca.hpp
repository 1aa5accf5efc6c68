#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "idsample/ingest.hpp"
#include "idsample/stats.hpp"

namespace idsample {

// Top-k principal components of the (optionally standardized) covariance.
// Component rows are orthonormal and ordered by descending eigenvalue; each
// row's largest-magnitude entry is positive.
struct PcaModel {
  Eigen::VectorXd mean;         // d
  Eigen::VectorXd scale;        // d; all ones unless standardized
  Eigen::MatrixXd components;   // k x d
  Eigen::VectorXd eigenvalues;  // k, non-negative, descending
  double total_variance = 0;    // trace of the covariance
  int k = 0;
  bool standardized = false;
};

struct VarianceSummary {
  std::vector<double> per_dim_ratio;  // eigenvalue_i / total_variance
  std::vector<double> cumulative;     // running sums of per_dim_ratio
  double accumulative_variance = 0;   // cumulative.back()
};

enum class PcaCompareMode { kShared, kIndependent };

// Mean-centered covariance (n-1 divisor) eigendecomposed by cyclic Jacobi.
// Requires n >= 2 rows and k <= d feature columns.
PcaModel fit_pca(const Dataset& ds, int k, bool standardize = false);

// Maps each row x to components * ((x - mean) / scale). Result is n x k.
Eigen::MatrixXd project(const PcaModel& model, const Dataset& ds);
Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& rows);

VarianceSummary variance_summary(const PcaModel& model);

// Method 2: z-tests over projected coordinates. kShared fits one model on
// ds and projects both sets through it; kIndependent fits each set its own
// model (both projections are then centered, so means match by construction).
SimilarityReport compare_pca(const Dataset& ds, const Dataset& sample, int k,
                             double alpha, PcaCompareMode mode,
                             bool standardize = false);

std::string pca_model_to_json(const PcaModel& model);

}  // namespace idsample
