// Per-(model, strategy) summaries and SVG box plots of run records.

#ifndef GFSTAB_REPORT_HPP
#define GFSTAB_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfstab/experiment.hpp"

namespace gfstab {

/// Names accepted by metric_value: the numeric CSV columns.
const std::vector<std::string>& metric_names();

/// Value of a numeric CSV column; empty for absent optional fields.
/// Throws std::invalid_argument for an unknown name.
std::optional<double> metric_value(const RunRecord& r, const std::string& metric);

struct Quartiles {
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Linear-interpolation quartiles (numpy's default). Throws on empty input.
Quartiles quartiles(std::vector<double> values);

/// Pearson correlation; empty with fewer than two points or zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

struct GroupSummary {
  std::string model;
  std::string strategy;
  std::size_t runs = 0;
  std::size_t valid_runs = 0;
  double validity = 0;  // valid_runs / runs
  std::vector<std::pair<std::string, std::optional<Quartiles>>> metrics;
  std::optional<double> corr_e1_e2;  // over valid runs

  const Quartiles* metric(const std::string& name) const;
};

/// Metrics summarised by aggregate().
const std::vector<std::string>& summary_metrics();

/// Groups in order of first appearance. Throws std::invalid_argument on
/// empty input.
std::vector<GroupSummary> aggregate(const std::vector<RunRecord>& records);

void write_summary(std::ostream& os, const std::vector<GroupSummary>& groups);

struct BoxplotOptions {
  bool show_outliers = false;
  std::string title;
  int width = 960;
  int height = 480;
};

/// One box per (model, strategy) group; whiskers at 1.5 IQR.
void render_boxplot(std::ostream& os, const std::vector<RunRecord>& records,
                    const std::string& metric, const BoxplotOptions& opts = {});
void render_boxplot(const std::string& path, const std::vector<RunRecord>& records,
                    const std::string& metric, const BoxplotOptions& opts = {});

}  // namespace gfstab

#endif  // GFSTAB_REPORT_HPP
