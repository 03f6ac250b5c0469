// Denoising experiment pipeline: graph -> smooth signal -> noise ->
// perturbation -> norms, bounds and distances, one record per seed.

#ifndef GFSTAB_EXPERIMENT_HPP
#define GFSTAB_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfstab/bounds.hpp"
#include "gfstab/generators.hpp"
#include "gfstab/perturb.hpp"
#include "gfstab/pgd.hpp"
#include "gfstab/spectral.hpp"

namespace gfstab {

/// One (model, strategy) cell of an experiment.
struct RunConfig {
  GenSpec gen;  // gen.seed is ignored; each run derives its own
  StrategyKind strategy = StrategyKind::AddDelete;
  PgdParams pgd = PgdParams::desk();
  SpectralFilter filter = SpectralFilter::lowpass(1.0);
  double budget_fraction = 0.1;
  double snr_db = 0.0;
  int smooth_modes = 10;
  int repeats = 20;
  std::uint64_t base_seed = 0;
  int strategy_retries = 10;  // redraws when G_p has an isolated node
  int max_tries = 1000;       // connected-sample attempts

  void validate() const;
};

struct RunRecord {
  std::string model;
  std::string strategy;
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  int budget = 0;
  bool valid = false;
  double e1 = 0;
  double e2 = 0;
  double thm_bound = 0;
  std::optional<double> corollary_bound;
  double chain_bound = 0;
  double filter_distance = 0;
  double rel_output_distance = 0;
  std::optional<double> loose_rod_fd;
  std::optional<double> loose_fd_ce2;
  std::optional<double> loose_e2_e1;
  std::optional<double> loose_e1_thm;
  double mean_degree = 0;
  double degree_std = 0;
  double aspl = 0;
  double diameter = 0;
  std::optional<double> degree_corr;
  double wall_ms = 0;

  // Not part of the CSV schema.
  int edits = 0;
  double max_remaining = 0;  // largest remaining-neighbour term over nodes
  int rejections = 0;        // strategy outputs redrawn for isolated nodes
};

struct RunFailure {
  std::string model;
  std::string strategy;
  std::uint64_t seed = 0;
  std::string message;
};

struct SuiteResult {
  std::vector<RunRecord> records;
  std::vector<RunFailure> failures;
};

/// Deterministic sub-seed for one stream of one run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform point on the (k-1)-simplex from normalised standard exponentials.
std::vector<double> dirichlet_weights(int k, Rng& rng);

/// Convex combination of the first k eigenvectors (ascending eigenvalues).
/// Throws std::invalid_argument unless 1 <= k <= n.
Signal gen_smooth_signal(const EigenSystem& eig, int k, Rng& rng);

/// x + z * (||x|| / ||z||) * 10^(-snr_db / 20) for standard normal z, so the
/// realised SNR is exactly snr_db. +infinity returns x unchanged.
Signal add_noise_snr(const Signal& x, double snr_db, Rng& rng);

/// Runs the full pipeline for one seed. Throws on generator or strategy
/// failure and std::logic_error if a link of the chain is violated.
RunRecord run_one(const RunConfig& config, std::uint64_t seed);

/// Runs seeds base_seed .. base_seed + repeats - 1 for every config, on
/// `threads` workers (0 = hardware concurrency). Records come back ordered
/// by (config index, seed); failures are collected, not thrown.
SuiteResult run_suite(const std::vector<RunConfig>& configs, int threads = 0);
SuiteResult run_suite(const RunConfig& config, int threads = 0);

extern const char* const kCsvHeader;

/// One row per record, 17 significant digits, empty cells for absent values.
void write_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_csv(const std::string& path, const std::vector<RunRecord>& records);
/// Throws ParseError on a malformed file.
std::vector<RunRecord> read_csv(std::istream& is);
std::vector<RunRecord> read_csv(const std::string& path);

void write_failures(std::ostream& os, const std::vector<RunFailure>& failures);

}  // namespace gfstab

#endif  // GFSTAB_EXPERIMENT_HPP
