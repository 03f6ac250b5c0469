#include "gfstab/graph.hpp"

#include <algorithm>
#include <iterator>
#include <queue>
#include <sstream>

namespace gfstab {

std::string to_string(const Edge& e) {
  std::ostringstream os;
  os << '(' << e.u << ", " << e.v << ')';
  return os.str();
}

namespace {

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

void check_range(int n, Node a, Node b) {
  if (a < 0 || b < 0 || a >= n || b >= n) {
    std::ostringstream os;
    os << "node id out of range in pair (" << a << ", " << b << ") for n=" << n;
    throw GraphError(os.str());
  }
}

}  // namespace

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw GraphError("negative node count");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    check_range(n, e.u, e.v);
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    edges_.push_back(e);
  }
  finalize();
}

Graph::Graph(int n, std::span<const std::pair<Node, Node>> pairs) : n_(n) {
  if (n < 0) throw GraphError("negative node count");
  edges_.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    check_range(n, a, b);
    if (a == b) {
      throw GraphError("self-loop in pair (" + std::to_string(a) + ", " +
                       std::to_string(b) + ")");
    }
    edges_.emplace_back(a, b);
  }
  finalize();
}

void Graph::finalize() {
  sort_unique(edges_);
  degree_.assign(static_cast<std::size_t>(n_), 0);
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (const Edge& e : edges_) {
    ++degree_[static_cast<std::size_t>(e.u)];
    ++degree_[static_cast<std::size_t>(e.v)];
    adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Node a, Node b) const {
  if (a == b || a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  const auto& nb = adj_[static_cast<std::size_t>(a)];
  return std::binary_search(nb.begin(), nb.end(), b);
}

Perturbation::Perturbation(std::vector<Edge> add, std::vector<Edge> del)
    : added(std::move(add)), deleted(std::move(del)) {
  sort_unique(added);
  sort_unique(deleted);
}

std::size_t edit_count(const Perturbation& p) {
  return p.added.size() + p.deleted.size();
}

Perturbation inverse(const Perturbation& p) {
  Perturbation q;
  q.added = p.deleted;
  q.deleted = p.added;
  return q;
}

void validate_perturbation(const Graph& g, const Perturbation& p) {
  for (const Edge& e : p.deleted) {
    check_range(g.num_nodes(), e.u, e.v);
    if (!g.has_edge(e.u, e.v)) {
      throw GraphError("deleted edge " + to_string(e) + " is not in the graph");
    }
  }
  for (const Edge& e : p.added) {
    check_range(g.num_nodes(), e.u, e.v);
    if (e.u == e.v) throw GraphError("added self-loop " + to_string(e));
    if (g.has_edge(e.u, e.v)) {
      throw GraphError("added edge " + to_string(e) + " already exists");
    }
  }
  // Added edges are absent from g and deleted ones present, so the two sets
  // are disjoint once the checks above pass.
}

Graph apply_perturbation(const Graph& g, const Perturbation& p) {
  validate_perturbation(g, p);
  std::vector<Edge> kept;
  kept.reserve(g.num_edges() + p.added.size());
  std::set_difference(g.edges().begin(), g.edges().end(), p.deleted.begin(),
                      p.deleted.end(), std::back_inserter(kept));
  kept.insert(kept.end(), p.added.begin(), p.added.end());
  return Graph(g.num_nodes(), kept);
}

Perturbation diff(const Graph& g, const Graph& gp) {
  if (g.num_nodes() != gp.num_nodes()) {
    throw GraphError("diff: node counts differ");
  }
  Perturbation p;
  std::set_difference(gp.edges().begin(), gp.edges().end(), g.edges().begin(),
                      g.edges().end(), std::back_inserter(p.added));
  std::set_difference(g.edges().begin(), g.edges().end(), gp.edges().begin(),
                      gp.edges().end(), std::back_inserter(p.deleted));
  return p;
}

bool is_connected(const Graph& g) {
  const int n = g.num_nodes();
  if (n <= 1) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Node> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    Node u = frontier.front();
    frontier.pop();
    for (Node v : g.neighbours(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

bool has_isolated(const Graph& g) {
  return std::any_of(g.degrees().begin(), g.degrees().end(),
                     [](int d) { return d == 0; });
}

std::vector<Node> neighbourhood(const Graph& g, Node u) {
  auto nb = g.neighbours(u);
  return {nb.begin(), nb.end()};
}

Graph build_graph(int n, std::span<const std::pair<Node, Node>> pairs) {
  return Graph(n, pairs);
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return Graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (Node u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph(n, e);
}

Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (Node u = 1; u <= leaves; ++u) e.emplace_back(0, u);
  return Graph(leaves + 1, e);
}

}  // namespace gfstab
