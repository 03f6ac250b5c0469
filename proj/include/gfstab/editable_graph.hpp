// Mutable adjacency structure with O(1) edge queries, insertions, removals
// and uniform edge sampling. Used by the iterative generators and the
// perturbation strategies; convert to an immutable Graph when done.

#ifndef GFSTAB_EDITABLE_GRAPH_HPP
#define GFSTAB_EDITABLE_GRAPH_HPP

#include <cstdint>
#include <vector>

#include "gfstab/graph.hpp"

namespace gfstab {

class EditableGraph {
 public:
  explicit EditableGraph(int n);
  explicit EditableGraph(const Graph& g);

  int num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  int degree(Node u) const { return degree_[static_cast<std::size_t>(u)]; }
  const std::vector<int>& degrees() const { return degree_; }

  bool has_edge(Node a, Node b) const {
    return a != b && slot_[index(a, b)] >= 0;
  }
  /// Returns false (and does nothing) if the edge exists or a == b.
  bool add_edge(Node a, Node b);
  /// Returns false (and does nothing) if the edge is absent.
  bool remove_edge(Node a, Node b);

  /// Edge at position i in [0, num_edges()); order changes under removal.
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  /// Unordered neighbour list of u.
  const std::vector<Node>& neighbours(Node u) const {
    return adj_[static_cast<std::size_t>(u)];
  }

  bool is_connected() const;
  Graph to_graph() const;

 private:
  std::size_t index(Node a, Node b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b);
  }

  void drop_neighbour(Node a, Node b);

  int n_;
  std::vector<int> degree_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Node>> adj_;
  std::vector<std::int32_t> slot_;  // n*n, position in edges_ or -1
};

}  // namespace gfstab

#endif  // GFSTAB_EDITABLE_GRAPH_HPP
