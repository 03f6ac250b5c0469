// Per-node perturbation statistics and the bound chain
//   rod <= ||g(L) - g(L_p)||_2 <= C ||E||_2 <= C ||E||_1 <= C * max_u bound_u.

#ifndef GFSTAB_BOUNDS_HPP
#define GFSTAB_BOUNDS_HPP

#include <iosfwd>
#include <optional>
#include <vector>

#include "gfstab/graph.hpp"
#include "gfstab/spectral.hpp"

namespace gfstab {

struct NodePerturbStats {
  Node u = 0;
  int d = 0;         // degree in G
  int d_p = 0;       // degree in G_p
  int added = 0;     // edges added at u
  int deleted = 0;   // edges deleted at u
  int min_nb = 0;    // smallest neighbour degree in G
  int min_nb_p = 0;  // same in G_p
  double alpha = 0;  // max |change| / degree over u and its neighbours in G
  int rewirings = 0; // equals added (= deleted) when every degree is preserved

  int change() const { return added - deleted; }
};

/// Throws GraphError when u is isolated in either graph.
NodePerturbStats node_stats(const Graph& g, const Graph& gp, Node u);
std::vector<NodePerturbStats> all_node_stats(const Graph& g, const Graph& gp);

/// The three parts of ||E_u||_1: deleted, added and remaining neighbours.
struct RowTerms {
  double deleted = 0;
  double added = 0;
  double remaining = 0;
  double total() const { return deleted + added + remaining; }
};

RowTerms exact_row_terms(const Graph& g, const Graph& gp, Node u);

/// Upper bounds on the three row terms. `remaining` is empty when
/// alpha >= 1, which also voids the node bound.
struct TermBounds {
  double deleted = 0;
  double added = 0;
  std::optional<double> remaining;
  bool valid() const { return remaining.has_value(); }
};

TermBounds term_bounds(const NodePerturbStats& s);

/// Sum of the three term bounds; empty when alpha >= 1.
std::optional<double> node_bound(const NodePerturbStats& s);

struct TheoremBound {
  /// Max node bound over the nodes where it is defined.
  double value = 0;
  /// alpha_u < 1 for every node.
  bool valid = true;
};

/// Throws GraphError when either graph has an isolated node.
TheoremBound theorem_bound(const Graph& g, const Graph& gp);

/// max_u 2 r_u / sqrt(d_u delta_u) for degree-preserving perturbations.
/// Throws std::invalid_argument if some degree changes.
double rewiring_bound(const Graph& g, const Perturbation& p);

struct NodeReport {
  NodePerturbStats stats;
  RowTerms exact;
  TermBounds bounds;
  std::optional<double> bound;
};

struct BoundReport {
  std::vector<NodeReport> nodes;
  double e1 = 0;
  double e2 = 0;
  TheoremBound theorem;
  std::optional<double> corollary;  // degree-preserving perturbations only
  double stability_constant = 0;
  double chain = 0;  // C * theorem.value
  double filter_distance = 0;
  std::optional<double> rel_output_distance;

  // bound / actual at each link; empty when actual is 0 or missing
  std::optional<double> loose_rod_fd;
  std::optional<double> loose_fd_ce2;
  std::optional<double> loose_e2_e1;
  std::optional<double> loose_e1_thm;

  /// Every link of the chain holds within tol (only meaningful when valid).
  bool chain_holds(double tol = 1e-9) const;
};

/// Full report for filter f on the pair (g, gp). The filter must act on L or
/// on L - I, whose error matrices coincide. When x is given the relative
/// output distance is included.
BoundReport chain_bound(const SpectralFilter& f, const Graph& g, const Graph& gp,
                        const std::optional<Signal>& x = std::nullopt);

void write_bound_report(std::ostream& os, const BoundReport& r, bool per_node);

struct Lemma1Result {
  double du_shift = 0;
  double dv_shift = 0;
  double value = 0;
};

/// Grid maximisation of |1/sqrt(du dv) - 1/sqrt((du+x)(dv+y))| over
/// [-a du, a du] x [-a dv, a dv]. Scan order is x-major from the lower
/// corner, first maximum wins.
Lemma1Result lemma1_oracle(int du, int dv, double alpha, int grid = 401);

}  // namespace gfstab

#endif  // GFSTAB_BOUNDS_HPP
