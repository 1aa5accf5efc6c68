#include "idsample/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "idsample/errors.hpp"

namespace idsample {

namespace {

// Palette for non-normal classes; blue is reserved for normal traffic.
const char* kPalette[] = {
    "orange",    "green",  "red",    "purple",  "brown",  "hotpink",
    "gray",      "olive",  "cyan",   "magenta", "teal",   "salmon",
    "maroon",    "gold",   "coral",  "indigo",  "darkgreen", "crimson",
    "darkkhaki", "darkorange",
};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));

std::string fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

const std::string& name_of(const std::map<int, std::string>& names, int id) {
  auto it = names.find(id);
  if (it == names.end()) {
    throw InputError("class id " + std::to_string(id) + " has no name");
  }
  return it->second;
}

}  // namespace

std::map<int, std::string> traffic_class_names(const Dataset& ds) {
  std::map<int, std::string> names;
  for (size_t i = 0; i < ds.class_names.size(); ++i) {
    names[static_cast<int>(i)] = ds.class_names[i];
  }
  return names;
}

std::map<int, std::string> binary_class_names() {
  return {{0, "normal"}, {1, "attack"}};
}

std::string color_for_class(int class_id, int normal_class_id) {
  if (class_id == normal_class_id) return "blue";
  int i = class_id % kPaletteSize;
  if (i < 0) i += kPaletteSize;
  return kPalette[i];
}

std::string format_proportion(double p) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8g", p);
  return buf;
}

DistributionTable render_distribution_table(
    const LabelDistribution& dist, const std::map<int, std::string>& class_names,
    const std::string& title) {
  DistributionTable table;
  table.title = title;
  table.total = dist.total;
  for (const auto& [cls, count] : dist.counts) {
    table.rows.push_back({name_of(class_names, cls), count, dist.proportions.at(cls)});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const DistributionTable::Row& a, const DistributionTable::Row& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.class_name < b.class_name;
            });
  return table;
}

std::string distribution_table_to_csv(const DistributionTable& table) {
  std::string out = "class,count,proportion\n";
  for (const auto& row : table.rows) {
    out += csv_escape(row.class_name);
    out += ',';
    out += std::to_string(row.count);
    out += ',';
    out += format_proportion(row.proportion);
    out += '\n';
  }
  out += "total," + std::to_string(table.total) + ",1\n";
  return out;
}

std::string render_comparison_table(const std::vector<ComparisonEntry>& entries) {
  std::string out = "dataset\tsample\tfeatures\tpca\n";
  for (const auto& entry : entries) {
    out += entry.dataset_name + '\t' + entry.sample_name + '\t' +
           entry.features.summary() + '\t' + entry.pca.summary() + '\n';
  }
  return out;
}

std::string pie_fractions_to_csv(const LabelDistribution& dist,
                                 const std::map<int, std::string>& class_names,
                                 int normal_class_id) {
  std::vector<std::pair<int, long>> order(dist.counts.begin(), dist.counts.end());
  std::sort(order.begin(), order.end(),
            [&](const std::pair<int, long>& a, const std::pair<int, long>& b) {
              const bool a_normal = a.first == normal_class_id;
              const bool b_normal = b.first == normal_class_id;
              if (a_normal != b_normal) return a_normal;  // normal first
              if (a.second != b.second) return a.second > b.second;
              return name_of(class_names, a.first) < name_of(class_names, b.first);
            });
  std::string out = "class,fraction,color\n";
  for (const auto& [cls, count] : order) {
    out += csv_escape(name_of(class_names, cls));
    out += ',';
    out += format_proportion(dist.proportions.at(cls));
    out += ',';
    out += color_for_class(cls, normal_class_id);
    out += '\n';
  }
  return out;
}

void emit_pie_fractions(const LabelDistribution& dist,
                        const std::map<int, std::string>& class_names,
                        int normal_class_id, const std::string& path) {
  write_text_file(path, pie_fractions_to_csv(dist, class_names, normal_class_id));
}

std::string point_cloud_to_csv(const Eigen::MatrixXd& points,
                               const Eigen::VectorXi& labels,
                               const std::map<int, std::string>& class_names) {
  if (points.cols() < 3) throw InputError("point cloud needs 3 coordinates");
  std::string out = "pc1,pc2,pc3,label\n";
  for (long r = 0; r < points.rows(); ++r) {
    out += format_double(points(r, 0));
    out += ',';
    out += format_double(points(r, 1));
    out += ',';
    out += format_double(points(r, 2));
    out += ',';
    out += csv_escape(name_of(class_names, labels(r)));
    out += '\n';
  }
  return out;
}

std::string scatter_svg_text(const Eigen::MatrixXd& points,
                             const Eigen::VectorXi& labels,
                             const std::map<int, std::string>& class_names,
                             const PlotSpec& spec) {
  const long n = points.rows();
  if (n < 1) throw InputError("scatter plot needs at least one point");
  if (points.cols() < 3) throw InputError("scatter plot needs 3 coordinates");

  // Uniform-stride decimation keeps the file bounded for large clouds.
  constexpr long kMaxDrawn = 5000;
  const long stride = n > kMaxDrawn ? (n + kMaxDrawn - 1) / kMaxDrawn : 1;
  std::vector<long> drawn;
  for (long r = 0; r < n; r += stride) drawn.push_back(r);

  double xmin = points(drawn[0], 0), xmax = xmin;
  double ymin = points(drawn[0], 1), ymax = ymin;
  double zmin = points(drawn[0], 2), zmax = zmin;
  for (long r : drawn) {
    xmin = std::min(xmin, points(r, 0));
    xmax = std::max(xmax, points(r, 0));
    ymin = std::min(ymin, points(r, 1));
    ymax = std::max(ymax, points(r, 1));
    zmin = std::min(zmin, points(r, 2));
    zmax = std::max(zmax, points(r, 2));
  }
  if (xmax == xmin) { xmin -= 0.5; xmax += 0.5; }
  if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }

  const double margin = 40;
  const double w = spec.width, h = spec.height;
  auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (w - 2 * margin); };
  auto py = [&](double y) { return h - margin - (y - ymin) / (ymax - ymin) * (h - 2 * margin); };
  auto pr = [&](double z) {
    if (zmax == zmin) return 3.0;
    return 1.5 + 3.0 * (z - zmin) / (zmax - zmin);
  };

  std::vector<int> legend_ids;
  for (long r = 0; r < n; ++r) {
    if (std::find(legend_ids.begin(), legend_ids.end(), labels(r)) == legend_ids.end()) {
      legend_ids.push_back(labels(r));
    }
  }
  std::sort(legend_ids.begin(), legend_ids.end());

  auto color_of = [&](int cls) -> std::string {
    auto it = spec.color_map.find(cls);
    if (it != spec.color_map.end()) return it->second;
    return color_for_class(cls, -1);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
         "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<g class=\"points\">\n";
  for (long r : drawn) {
    svg += "<circle class=\"pt\" cx=\"" + fixed2(px(points(r, 0))) + "\" cy=\"" +
           fixed2(py(points(r, 1))) + "\" r=\"" + fixed2(pr(points(r, 2))) +
           "\" fill=\"" + color_of(labels(r)) + "\" fill-opacity=\"0.6\"/>\n";
  }
  svg += "</g>\n<g class=\"legend\">\n";
  double ly = 16;
  for (int cls : legend_ids) {
    svg += "<g class=\"legend-item\"><rect x=\"" + fixed2(w - margin - 110) +
           "\" y=\"" + fixed2(ly) + "\" width=\"10\" height=\"10\" fill=\"" +
           color_of(cls) + "\"/><text x=\"" + fixed2(w - margin - 96) + "\" y=\"" +
           fixed2(ly + 9) + "\" font-size=\"11\" font-family=\"sans-serif\">" +
           name_of(class_names, cls) + "</text></g>\n";
    ly += 16;
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void emit_scatter_svg(const Eigen::MatrixXd& points, const Eigen::VectorXi& labels,
                      const std::map<int, std::string>& class_names,
                      const PlotSpec& spec, const std::string& path) {
  write_text_file(path, scatter_svg_text(points, labels, class_names, spec));
}

std::string variance_summary_line(const std::string& name,
                                  const VarianceSummary& summary) {
  auto bracketed = [](const std::vector<double>& values) {
    std::string out = "[";
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out += ' ';
      out += format_proportion(values[i]);
    }
    out += ']';
    return out;
  };
  char acc[40];
  std::snprintf(acc, sizeof(acc), "%.15g", summary.accumulative_variance);
  return name + ": dim_ratio=" + bracketed(summary.per_dim_ratio) +
         " cum_ratio=" + bracketed(summary.cumulative) + " acc_var=" + acc;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("I/O error writing '" + path + "'");
}

}  // namespace idsample
