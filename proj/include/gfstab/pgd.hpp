// Projected gradient ascent attack on the lowpass denoiser.

#ifndef GFSTAB_PGD_HPP
#define GFSTAB_PGD_HPP

#include <cmath>
#include <vector>

#include "gfstab/perturb.hpp"
#include "gfstab/spectral.hpp"

namespace gfstab {

struct PgdParams {
  int iterations = 200;   // T
  int trials = 250;       // K
  double eta = 200.0;     // step size at t is eta / sqrt(t)
  double noise_std = std::sqrt(1e-3);  // diagonal jitter, standard deviation

  static PgdParams desk() { return {60, 50, 200.0, std::sqrt(1e-3)}; }
  static PgdParams full() { return {}; }
  void validate() const;
};

/// Node pairs (u < v) in row-major order; index p of the relaxation vector s
/// refers to pair_list(n)[p].
std::vector<Edge> pair_list(int n);

/// Relaxed attack objective: A' = A + (1 - 2A) o S plus a fixed diagonal
/// (clamped to [0, 1]), y_hat = (I + alpha L')^{-1} x, and
/// loss = ||y - y_hat|| / ||y||.
class PgdObjective {
 public:
  PgdObjective(const Graph& g, const Signal& y_clean, const Signal& x_noisy, double alpha);

  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  const std::vector<Edge>& pairs() const { return pairs_; }

  /// Loss at s with the given diagonal (pass zeros for the noiseless value).
  double loss(const Eigen::VectorXd& s, const Eigen::VectorXd& diag) const;
  /// Loss and its gradient with respect to s.
  double loss_and_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& diag,
                           Eigen::VectorXd& grad) const;
  /// Loss of the discrete graph obtained by applying p (no jitter).
  double discrete_loss(const Perturbation& p) const;

 private:
  Eigen::MatrixXd relaxed_adjacency(const Eigen::VectorXd& s, const Eigen::VectorXd& diag) const;

  Graph g_;
  Eigen::MatrixXd a_;
  Signal y_, x_;
  double alpha_;
  std::vector<Edge> pairs_;
};

/// Euclidean projection onto {s in [0,1]^m : sum(s) <= budget}.
Eigen::VectorXd project_capped_box(const Eigen::VectorXd& s, double budget);

/// Attack on a lowpass filter. Runs params.iterations ascent steps on the
/// relaxed loss, then draws params.trials Bernoulli(s) samples, discards
/// those over budget or with isolated nodes, and returns the sample with the
/// largest noiseless loss. Throws PerturbError if every sample is discarded.
Perturbation strat_pgd(const Graph& g, Budget budget, const Signal& x_clean,
                       const Signal& x_noisy, const SpectralFilter& filter,
                       const PgdParams& params, Rng& rng);

}  // namespace gfstab

#endif  // GFSTAB_PGD_HPP
