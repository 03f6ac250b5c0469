// Flat key/value experiment configuration.
//
//   # comment
//   preset = desk            desk (n=50, 20 repeats, PGD T=60 K=50) or full
//                            (n=100, 100 repeats, PGD T=200 K=250); applied first
//   models = ER,BA,WS        any of ER BA WS KREG KNN ASSORT, or "all"
//   strategies = Delete,PGD  any of Delete Add AddDelete Rewire Robust PGD, or "all"
//   n = 50
//   repeats = 20
//   base_seed = 0
//   threads = 0              0 = hardware concurrency
//   budget_fraction = 0.1
//   snr_db = 0               "inf" disables the noise
//   smooth_modes = 10
//   filter = lowpass         lowpass | polynomial | identity
//   alpha = 1                lowpass parameter
//   theta = 0.5,0.25         polynomial coefficients theta_0..theta_K on L - I
//   pgd_iterations, pgd_trials, pgd_eta, pgd_noise_std
//   er_p, ba_m, ws_k, ws_p, kreg_k, knn_k,
//   assort_base_p, assort_rewire_p, assort_threshold, assort_max_iterations
//   output = results.csv
//   failures = failures.csv  default: <output>.failures.csv

#ifndef GFSTAB_CONFIG_HPP
#define GFSTAB_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gfstab/experiment.hpp"

namespace gfstab {

struct ExperimentPlan {
  RunConfig base;
  std::vector<GraphModel> models;
  std::vector<StrategyKind> strategies;
  int threads = 0;
  std::string output = "results.csv";
  std::string failures;

  static ExperimentPlan desk();
  static ExperimentPlan full();

  /// One RunConfig per (model, strategy), models outermost.
  std::vector<RunConfig> expand() const;
  std::string failures_path() const;
};

/// Throws ParseError on malformed lines, unknown keys or bad values.
ExperimentPlan parse_plan(std::istream& is);
ExperimentPlan load_plan(const std::string& path);
void write_plan(std::ostream& os, const ExperimentPlan& plan);

}  // namespace gfstab

#endif  // GFSTAB_CONFIG_HPP
