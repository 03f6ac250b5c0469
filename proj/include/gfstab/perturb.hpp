// Edge perturbation strategies under a fixed edit budget.

#ifndef GFSTAB_PERTURB_HPP
#define GFSTAB_PERTURB_HPP

#include <stdexcept>
#include <string>

#include "gfstab/generators.hpp"
#include "gfstab/graph.hpp"

namespace gfstab {

class PerturbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of edge edits. A double-edge rewiring costs four.
struct Budget {
  int edits = 0;

  Budget() = default;
  explicit Budget(int e);
  /// floor(fraction * |E|), 10% by default.
  static Budget fraction_of_edges(const Graph& g, double fraction = 0.1);
};

enum class StrategyKind { Delete, Add, AddDelete, Rewire, Robust, Pgd };

std::string to_string(StrategyKind s);
StrategyKind parse_strategy(const std::string& s);

/// Deletes uniformly chosen edges, redrawing any that would leave a node
/// isolated.
Perturbation strat_delete(const Graph& g, Budget budget, Rng& rng);

/// Adds uniformly chosen non-edges.
Perturbation strat_add(const Graph& g, Budget budget, Rng& rng);

/// ceil(B/2) deletions followed by floor(B/2) additions.
Perturbation strat_add_delete(const Graph& g, Budget budget, Rng& rng);

/// floor(B/4) degree-preserving double-edge rewirings. Each operation picks
/// edges u~v, u'~v' on four distinct nodes with u,v both non-adjacent to
/// u',v', deletes them and adds u~u', v~v'. Edges created by an earlier
/// operation are never picked again and deleted edges are never re-added,
/// so the output always has exactly 4*floor(B/4) edits.
Perturbation strat_rewire(const Graph& g, Budget budget, Rng& rng, int max_draws = 1000);

/// Greedy flips: each step flips the unflipped node pair that minimizes
/// ||L_candidate - L_original||_1, skipping flips that isolate a node.
/// Ties go to the lexicographically smallest pair.
Perturbation strat_robust(const Graph& g, Budget budget);

}  // namespace gfstab

#endif  // GFSTAB_PERTURB_HPP
