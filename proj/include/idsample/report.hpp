#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "idsample/pca.hpp"
#include "idsample/sampling.hpp"
#include "idsample/stats.hpp"

namespace idsample {

// Class-count table: rows ordered by count with proportions, plus a total.
struct DistributionTable {
  struct Row {
    std::string class_name;
    long count = 0;
    double proportion = 0;
  };
  std::string title;
  std::vector<Row> rows;  // count descending, ties by name
  long total = 0;
};

struct PlotSpec {
  enum class Kind { kPie, kScatter3dProjection };
  Kind kind = Kind::kScatter3dProjection;
  std::string data_path;
  int width = 640;
  int height = 480;
  std::map<int, std::string> color_map;  // class id -> color; empty = palette
};

// Per-dataset row of the method-comparison table.
struct ComparisonEntry {
  std::string dataset_name;
  std::string sample_name;
  SimilarityReport features;
  SimilarityReport pca;
};

// Class-id -> display-name maps.
std::map<int, std::string> traffic_class_names(const Dataset& ds);
std::map<int, std::string> binary_class_names();

// Deterministic color per class id; the normal class is always blue.
std::string color_for_class(int class_id, int normal_class_id);

// Proportion with 8 significant digits, the print precision of the tables.
std::string format_proportion(double p);

DistributionTable render_distribution_table(
    const LabelDistribution& dist, const std::map<int, std::string>& class_names,
    const std::string& title);

std::string distribution_table_to_csv(const DistributionTable& table);

// TSV with one row per (dataset, sample) pair and one cell per method,
// each cell "similar" or "N similar, M different features".
std::string render_comparison_table(const std::vector<ComparisonEntry>& entries);

// CSV of (class_name, fraction, color); the normal class comes first and is
// always blue, the rest follow by count descending.
void emit_pie_fractions(const LabelDistribution& dist,
                        const std::map<int, std::string>& class_names,
                        int normal_class_id, const std::string& path);
std::string pie_fractions_to_csv(const LabelDistribution& dist,
                                 const std::map<int, std::string>& class_names,
                                 int normal_class_id);

// Static SVG of the 3D points: pc1/pc2 orthographic, pc3 as marker size.
// Clouds above 5000 points are decimated by a uniform stride.
void emit_scatter_svg(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels,
                      const std::map<int, std::string>& class_names,
                      const PlotSpec& spec, const std::string& path);
std::string scatter_svg_text(const Eigen::MatrixXd& points,
                             const Eigen::VectorXi& labels,
                             const std::map<int, std::string>& class_names,
                             const PlotSpec& spec);

// CSV point cloud with columns pc1,pc2,pc3,label.
std::string point_cloud_to_csv(const Eigen::MatrixXd& points,
                               const Eigen::VectorXi& labels,
                               const std::map<int, std::string>& class_names);

// One line of the variance table: per-dimension ratios, cumulative ratios,
// and the accumulated variance at full precision.
std::string variance_summary_line(const std::string& name,
                                  const VarianceSummary& summary);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace idsample
