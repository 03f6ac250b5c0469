// Undirected simple graphs over a fixed node labelling, and edge-level
// perturbations of them.

#ifndef GFSTAB_GRAPH_HPP
#define GFSTAB_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfstab {

using Node = int;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered node pair, always stored as (min, max).
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph. Duplicate pairs (in either orientation) are
  /// merged; self-loops and out-of-range ids throw GraphError.
  Graph(int n, std::span<const Edge> edges);
  Graph(int n, std::span<const std::pair<Node, Node>> pairs);

  int num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }

  /// Edges in lexicographic order.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& degrees() const { return degree_; }
  int degree(Node u) const { return degree_[static_cast<std::size_t>(u)]; }

  /// Sorted neighbour list of u.
  std::span<const Node> neighbours(Node u) const {
    return adj_[static_cast<std::size_t>(u)];
  }
  bool has_edge(Node a, Node b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void finalize();

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
  std::vector<std::vector<Node>> adj_;
};

/// Edge additions and deletions relative to some base graph. Both lists are
/// kept sorted and duplicate-free.
struct Perturbation {
  std::vector<Edge> added;
  std::vector<Edge> deleted;

  Perturbation() = default;
  Perturbation(std::vector<Edge> add, std::vector<Edge> del);

  bool empty() const { return added.empty() && deleted.empty(); }
  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

std::size_t edit_count(const Perturbation& p);

/// Swaps the roles of added and deleted edges.
Perturbation inverse(const Perturbation& p);

/// Throws GraphError unless p is a valid edit of g: disjoint sets, deleted
/// edges present in g, added edges absent from g, ids in range.
void validate_perturbation(const Graph& g, const Perturbation& p);

Graph apply_perturbation(const Graph& g, const Perturbation& p);

/// The perturbation taking g to gp (same node count required).
Perturbation diff(const Graph& g, const Graph& gp);

bool is_connected(const Graph& g);
bool has_isolated(const Graph& g);
std::vector<Node> neighbourhood(const Graph& g, Node u);

Graph build_graph(int n, std::span<const std::pair<Node, Node>> pairs);

// Small named graphs used throughout the tests and tools.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);

}  // namespace gfstab

#endif  // GFSTAB_GRAPH_HPP
