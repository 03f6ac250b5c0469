// Named graphs and perturbations shared by the test suites.

#ifndef GFSTAB_TESTS_FIXTURES_HPP
#define GFSTAB_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "gfstab/graph.hpp"

namespace gfstab::fixtures {

// K3 with edge (0,1) deleted.
inline Graph k3() { return complete_graph(3); }
inline Perturbation k3_delete() { return Perturbation({}, {Edge(0, 1)}); }

// One double-edge rewiring of the 6-cycle: delete (0,1),(3,4); add (0,3),(1,4).
inline Graph c6() { return cycle_graph(6); }
inline Perturbation c6_rewire() {
  return Perturbation({Edge(0, 3), Edge(1, 4)}, {Edge(0, 1), Edge(3, 4)});
}

// Random connected graph without isolated nodes: a random spanning tree plus
// extra random edges.
inline Graph random_connected(int n, double extra_p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (Node v = 1; v < n; ++v) {
    std::uniform_int_distribution<Node> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  std::bernoulli_distribution coin(extra_p);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

// Random valid perturbation of g that leaves no node isolated: each edge is
// deleted with probability p_del (unless that would isolate an endpoint),
// each non-edge added with probability p_add.
inline Perturbation random_perturbation(const Graph& g, double p_del, double p_add,
                                        std::mt19937_64& rng) {
  std::vector<int> deg = g.degrees();
  std::vector<Edge> del, add;
  std::bernoulli_distribution del_coin(p_del), add_coin(p_add);
  for (const Edge& e : g.edges()) {
    if (del_coin(rng) && deg[static_cast<std::size_t>(e.u)] > 1 &&
        deg[static_cast<std::size_t>(e.v)] > 1) {
      --deg[static_cast<std::size_t>(e.u)];
      --deg[static_cast<std::size_t>(e.v)];
      del.push_back(e);
    }
  }
  for (Node u = 0; u < g.num_nodes(); ++u)
    for (Node v = u + 1; v < g.num_nodes(); ++v)
      if (!g.has_edge(u, v) && add_coin(rng)) add.emplace_back(u, v);
  return Perturbation(std::move(add), std::move(del));
}

}  // namespace gfstab::fixtures

#endif  // GFSTAB_TESTS_FIXTURES_HPP
