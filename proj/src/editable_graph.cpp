#include "gfstab/editable_graph.hpp"

#include <algorithm>
#include <queue>

namespace gfstab {

EditableGraph::EditableGraph(int n)
    : n_(n),
      degree_(static_cast<std::size_t>(n), 0),
      adj_(static_cast<std::size_t>(n)),
      slot_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1) {}

EditableGraph::EditableGraph(const Graph& g) : EditableGraph(g.num_nodes()) {
  edges_.reserve(g.num_edges());
  for (const Edge& e : g.edges()) add_edge(e.u, e.v);
}

bool EditableGraph::add_edge(Node a, Node b) {
  if (a == b || has_edge(a, b)) return false;
  const auto pos = static_cast<std::int32_t>(edges_.size());
  edges_.emplace_back(a, b);
  slot_[index(a, b)] = pos;
  slot_[index(b, a)] = pos;
  ++degree_[static_cast<std::size_t>(a)];
  ++degree_[static_cast<std::size_t>(b)];
  adj_[static_cast<std::size_t>(a)].push_back(b);
  adj_[static_cast<std::size_t>(b)].push_back(a);
  return true;
}

bool EditableGraph::remove_edge(Node a, Node b) {
  if (a == b) return false;
  const std::int32_t pos = slot_[index(a, b)];
  if (pos < 0) return false;
  // Swap-with-last keeps the edge array dense for uniform sampling.
  const Edge last = edges_.back();
  edges_[static_cast<std::size_t>(pos)] = last;
  slot_[index(last.u, last.v)] = pos;
  slot_[index(last.v, last.u)] = pos;
  edges_.pop_back();
  slot_[index(a, b)] = -1;
  slot_[index(b, a)] = -1;
  --degree_[static_cast<std::size_t>(a)];
  --degree_[static_cast<std::size_t>(b)];
  drop_neighbour(a, b);
  drop_neighbour(b, a);
  return true;
}

bool EditableGraph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::queue<Node> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const Node u = frontier.front();
    frontier.pop();
    for (Node v : adj_[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n_;
}

void EditableGraph::drop_neighbour(Node a, Node b) {
  auto& nb = adj_[static_cast<std::size_t>(a)];
  auto it = std::find(nb.begin(), nb.end(), b);
  *it = nb.back();
  nb.pop_back();
}

Graph EditableGraph::to_graph() const { return Graph(n_, edges_); }

}  // namespace gfstab
