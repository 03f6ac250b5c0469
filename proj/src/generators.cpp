#include "gfstab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "gfstab/editable_graph.hpp"

namespace gfstab {

std::string to_string(GraphModel m) {
  switch (m) {
    case GraphModel::ER: return "ER";
    case GraphModel::BA: return "BA";
    case GraphModel::WS: return "WS";
    case GraphModel::KReg: return "KREG";
    case GraphModel::KNN: return "KNN";
    case GraphModel::Assortative: return "ASSORT";
  }
  return "?";
}

GraphModel parse_graph_model(const std::string& s) {
  std::string up = s;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "K-REG" || up == "KREGULAR") up = "KREG";
  if (up == "K-NN") up = "KNN";
  if (up == "ASSORTATIVE") up = "ASSORT";
  for (GraphModel m : kAllModels)
    if (to_string(m) == up) return m;
  throw std::invalid_argument("unknown graph model '" + s + "'");
}

double GenSpec::effective_er_p() const {
  return er_p > 0 ? er_p : std::log(static_cast<double>(n)) / n;
}

double GenSpec::effective_assort_base_p() const {
  return assort_base_p > 0 ? assort_base_p : std::log(static_cast<double>(n)) / n;
}

void GenSpec::validate() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument(what); };
  if (n < 1) bad("n must be positive");
  switch (model) {
    case GraphModel::ER:
      if (!(effective_er_p() > 0 && effective_er_p() <= 1)) bad("ER p must lie in (0, 1]");
      break;
    case GraphModel::BA:
      if (ba_m < 1 || ba_m >= n) bad("BA requires 1 <= m < n");
      break;
    case GraphModel::WS:
      if (ws_k <= 0 || ws_k % 2 != 0 || ws_k >= n) bad("WS requires even K with 0 < K < n");
      if (ws_p < 0 || ws_p > 1) bad("WS p must lie in [0, 1]");
      break;
    case GraphModel::KReg:
      if (kreg_k < 0 || kreg_k >= n) bad("K-regular requires 0 <= K < n");
      if ((static_cast<long>(n) * kreg_k) % 2 != 0) bad("K-regular requires n*K even");
      break;
    case GraphModel::KNN:
      if (knn_k < 1 || knn_k >= n) bad("K-NN requires 1 <= K < n");
      break;
    case GraphModel::Assortative:
      if (!(effective_assort_base_p() > 0 && effective_assort_base_p() <= 1))
        bad("assortative base p must lie in (0, 1]");
      if (assort_rewire_p < 0 || assort_rewire_p > 1) bad("assortative rewire p must lie in [0, 1]");
      if (assort_max_iterations < 1) bad("assortative iteration cap must be positive");
      break;
  }
}

Graph gen_er(int n, double p, Rng& rng) {
  std::bernoulli_distribution coin(std::clamp(p, 0.0, 1.0));
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph gen_ba(int n, int m, Rng& rng) {
  if (m < 1 || m >= n) throw std::invalid_argument("BA requires 1 <= m < n");
  EditableGraph g(n);
  // Each node appears once per incident edge, so uniform draws from this
  // list are degree-proportional.
  std::vector<Node> repeated;
  for (Node leaf = 1; leaf <= m; ++leaf) {
    g.add_edge(0, leaf);
    repeated.push_back(0);
    repeated.push_back(leaf);
  }
  std::vector<Node> targets;
  for (Node fresh = m + 1; fresh < n; ++fresh) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
    while (static_cast<int>(targets.size()) < m) {
      const Node t = repeated[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (Node t : targets) {
      g.add_edge(fresh, t);
      repeated.push_back(fresh);
      repeated.push_back(t);
    }
  }
  return g.to_graph();
}

Graph gen_ws(int n, int k, double p, Rng& rng) {
  if (k <= 0 || k % 2 != 0 || k >= n)
    throw std::invalid_argument("WS requires even K with 0 < K < n");
  EditableGraph g(n);
  for (Node i = 0; i < n; ++i)
    for (int j = 1; j <= k / 2; ++j) g.add_edge(i, (i + j) % n);

  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<Node> any(0, n - 1);
  for (int j = 1; j <= k / 2; ++j) {
    for (Node i = 0; i < n; ++i) {
      const Node target = (i + j) % n;
      if (!coin(rng)) continue;
      if (!g.has_edge(i, target)) continue;  // already rewired away
      if (g.degree(i) >= n - 1) continue;    // no free endpoint exists
      Node w = any(rng);
      while (w == i || g.has_edge(i, w)) w = any(rng);
      g.remove_edge(i, target);
      g.add_edge(i, w);
    }
  }
  return g.to_graph();
}

namespace {

// Whether some pair of distinct nodes among the leftover stubs can still be
// joined without creating a duplicate edge.
bool pairing_can_continue(const std::set<Edge>& edges, const std::map<Node, int>& leftover) {
  if (leftover.empty()) return true;
  for (auto a = leftover.begin(); a != leftover.end(); ++a)
    for (auto b = std::next(a); b != leftover.end(); ++b)
      if (!edges.count(Edge(a->first, b->first))) return true;
  return false;
}

std::optional<std::set<Edge>> try_pairing(int n, int k, Rng& rng) {
  std::set<Edge> edges;
  std::vector<Node> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r)
    for (Node u = 0; u < n; ++u) stubs.push_back(u);

  while (!stubs.empty()) {
    std::map<Node, int> leftover;
    std::shuffle(stubs.begin(), stubs.end(), rng);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const Node a = stubs[i];
      const Node b = stubs[i + 1];
      if (a != b && !edges.count(Edge(a, b))) {
        edges.emplace(a, b);
      } else {
        ++leftover[a];
        ++leftover[b];
      }
    }
    if (!pairing_can_continue(edges, leftover)) return std::nullopt;
    stubs.clear();
    for (auto [node, count] : leftover) stubs.insert(stubs.end(), static_cast<std::size_t>(count), node);
  }
  return edges;
}

}  // namespace

Graph gen_kreg(int n, int k, Rng& rng) {
  if ((static_cast<long>(n) * k) % 2 != 0)
    throw GenerationError("no " + std::to_string(k) + "-regular graph on " + std::to_string(n) +
                          " nodes: n*K is odd");
  if (k < 0 || k >= n)
    throw GenerationError("no " + std::to_string(k) + "-regular graph on " + std::to_string(n) +
                          " nodes: K must satisfy 0 <= K < n");
  if (k == 0) return Graph(n, std::span<const Edge>{});
  for (;;) {
    if (auto edges = try_pairing(n, k, rng)) {
      std::vector<Edge> list(edges->begin(), edges->end());
      return Graph(n, list);
    }
  }
}

Graph knn_graph(const std::vector<std::array<double, 2>>& points, int k) {
  const int n = static_cast<int>(points.size());
  if (k < 1 || k >= n) throw std::invalid_argument("K-NN requires 1 <= K < n");
  std::vector<Edge> edges;
  std::vector<std::pair<double, Node>> dist;
  for (Node u = 0; u < n; ++u) {
    dist.clear();
    for (Node v = 0; v < n; ++v) {
      if (v == u) continue;
      const double dx = points[static_cast<std::size_t>(u)][0] - points[static_cast<std::size_t>(v)][0];
      const double dy = points[static_cast<std::size_t>(u)][1] - points[static_cast<std::size_t>(v)][1];
      dist.emplace_back(dx * dx + dy * dy, v);
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    for (int i = 0; i < k; ++i) edges.emplace_back(u, dist[static_cast<std::size_t>(i)].second);
  }
  return Graph(n, edges);
}

Graph gen_knn(int n, int k, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::array<double, 2>> points(static_cast<std::size_t>(n));
  for (auto& pt : points) {
    pt[0] = unit(rng);
    pt[1] = unit(rng);
  }
  return knn_graph(points, k);
}

namespace {

// Newman's edge-based form of the endpoint-degree Pearson correlation. With
// the degree sequence fixed, only sum_{edges} d_u d_v varies, which lets the
// rewiring loop update the coefficient in O(1).
struct AssortativityTerms {
  double edges = 0;
  double mean = 0;      // sum (d_u + d_v) / 2M
  double second = 0;    // sum (d_u^2 + d_v^2) / 2M
  double cross_sum = 0; // sum d_u d_v

  double variance() const { return second - mean * mean; }
  double value() const { return (cross_sum / edges - mean * mean) / variance(); }
};

AssortativityTerms assortativity_terms(const std::vector<Edge>& edges, const std::vector<int>& deg) {
  AssortativityTerms t;
  t.edges = static_cast<double>(edges.size());
  for (const Edge& e : edges) {
    const double du = deg[static_cast<std::size_t>(e.u)];
    const double dv = deg[static_cast<std::size_t>(e.v)];
    t.mean += 0.5 * (du + dv);
    t.second += 0.5 * (du * du + dv * dv);
    t.cross_sum += du * dv;
  }
  if (t.edges > 0) {
    t.mean /= t.edges;
    t.second /= t.edges;
  }
  return t;
}

bool degenerate(const AssortativityTerms& t) {
  return t.edges == 0 || !(t.variance() > 1e-12 * std::max(1.0, t.second));
}

// Endpoints of a and b ordered by (degree descending, id ascending).
std::array<Node, 4> rank_by_degree(const std::vector<int>& deg, Edge a, Edge b) {
  std::array<Node, 4> q = {a.u, a.v, b.u, b.v};
  std::sort(q.begin(), q.end(), [&](Node x, Node y) {
    const int dx = deg[static_cast<std::size_t>(x)];
    const int dy = deg[static_cast<std::size_t>(y)];
    return dx != dy ? dx > dy : x < y;
  });
  return q;
}

bool four_distinct(Edge a, Edge b) {
  return a.u != b.u && a.u != b.v && a.v != b.u && a.v != b.v;
}

}  // namespace

std::optional<double> degree_correlation(const Graph& g) {
  const AssortativityTerms t = assortativity_terms(g.edges(), g.degrees());
  if (degenerate(t)) return std::nullopt;
  return t.value();
}

std::optional<std::pair<Edge, Edge>> xbs_reconnect(const Graph& g, Edge a, Edge b) {
  if (!four_distinct(a, b)) return std::nullopt;
  const auto q = rank_by_degree(g.degrees(), a, b);
  const Edge high(q[0], q[1]);
  const Edge low(q[2], q[3]);
  auto survives = [&](Edge e) { return g.has_edge(e.u, e.v) && e != a && e != b; };
  if (survives(high) || survives(low)) return std::nullopt;
  return std::make_pair(high, low);
}

Graph gen_assortative(const Graph& base, const GenSpec& spec, Rng& rng) {
  EditableGraph g(base);
  const std::vector<int>& deg = base.degrees();
  AssortativityTerms terms = assortativity_terms(base.edges(), deg);
  if (degenerate(terms))
    throw GenerationError("assortative rewiring needs a non-constant degree sequence");
  if (g.num_edges() < 2) throw GenerationError("assortative rewiring needs at least two edges");

  std::uniform_int_distribution<std::size_t> pick(0, g.num_edges() - 1);
  std::bernoulli_distribution assortative_move(spec.assort_rewire_p);
  std::bernoulli_distribution coin(0.5);
  auto product = [&](Edge e) {
    return static_cast<double>(deg[static_cast<std::size_t>(e.u)]) * deg[static_cast<std::size_t>(e.v)];
  };

  long iteration = 0;
  while (terms.value() < spec.assort_threshold) {
    if (iteration++ >= spec.assort_max_iterations) {
      std::ostringstream os;
      os << "assortative rewiring hit the iteration cap (" << spec.assort_max_iterations
         << ") at degree correlation " << terms.value() << " < " << spec.assort_threshold;
      throw GenerationError(os.str());
    }
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i == j) continue;
    const Edge a = g.edge(i);
    const Edge b = g.edge(j);
    if (!four_distinct(a, b)) continue;

    Edge first, second;
    if (assortative_move(rng)) {
      const auto q = rank_by_degree(deg, a, b);
      first = Edge(q[0], q[1]);
      second = Edge(q[2], q[3]);
    } else if (coin(rng)) {
      first = Edge(a.u, b.u);
      second = Edge(a.v, b.v);
    } else {
      first = Edge(a.u, b.v);
      second = Edge(a.v, b.u);
    }

    g.remove_edge(a.u, a.v);
    g.remove_edge(b.u, b.v);
    if (g.has_edge(first.u, first.v) || g.has_edge(second.u, second.v)) {
      g.add_edge(a.u, a.v);
      g.add_edge(b.u, b.v);
      continue;
    }
    g.add_edge(first.u, first.v);
    g.add_edge(second.u, second.v);
    if (!g.is_connected()) {
      g.remove_edge(first.u, first.v);
      g.remove_edge(second.u, second.v);
      g.add_edge(a.u, a.v);
      g.add_edge(b.u, b.v);
      continue;
    }
    terms.cross_sum += product(first) + product(second) - product(a) - product(b);
  }
  return g.to_graph();
}

Graph generate(const GenSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.model) {
    case GraphModel::ER: return gen_er(spec.n, spec.effective_er_p(), rng);
    case GraphModel::BA: return gen_ba(spec.n, spec.ba_m, rng);
    case GraphModel::WS: return gen_ws(spec.n, spec.ws_k, spec.ws_p, rng);
    case GraphModel::KReg: return gen_kreg(spec.n, spec.kreg_k, rng);
    case GraphModel::KNN: return gen_knn(spec.n, spec.knn_k, rng);
    case GraphModel::Assortative: {
      Graph base = gen_er(spec.n, spec.effective_assort_base_p(), rng);
      if (!is_connected(base)) return base;
      return gen_assortative(base, spec, rng);
    }
  }
  throw std::invalid_argument("unknown graph model");
}

Graph sample_connected(const GenSpec& spec, int max_tries) {
  if (max_tries < 1) throw std::invalid_argument("max_tries must be at least 1");
  Rng rng(spec.seed);
  std::string last_error;
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    if (spec.model == GraphModel::Assortative) {
      // A base that cannot be rewired up to the threshold is rejected like a
      // disconnected one.
      try {
        Graph g = generate(spec, rng);
        if (is_connected(g)) return g;
        continue;
      } catch (const GenerationError& e) {
        last_error = e.what();
        continue;
      }
    }
    Graph g = generate(spec, rng);
    if (is_connected(g)) return g;
  }
  std::string msg = "no connected " + to_string(spec.model) + " sample in " + std::to_string(max_tries) + " tries";
  if (!last_error.empty()) msg += "; last: " + last_error;
  throw GenerationError(msg);
}

GraphStats summary_stats(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) throw GraphError("summary_stats: empty graph");
  if (!is_connected(g)) throw GraphError("summary_stats: path metrics need a connected graph");

  GraphStats s;
  s.mean_degree = 2.0 * static_cast<double>(g.num_edges()) / n;
  double var = 0;
  for (int d : g.degrees()) var += (d - s.mean_degree) * (d - s.mean_degree);
  s.degree_std = std::sqrt(var / n);

  double total = 0;
  int diameter = 0;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::queue<Node> frontier;
  for (Node src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(src)] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const Node u = frontier.front();
      frontier.pop();
      for (Node v : g.neighbours(u)) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          frontier.push(v);
        }
      }
    }
    for (int d : dist) {
      total += d;
      diameter = std::max(diameter, d);
    }
  }
  s.avg_shortest_path = n > 1 ? total / (static_cast<double>(n) * (n - 1)) : 0.0;
  s.diameter = diameter;
  s.degree_correlation = degree_correlation(g);
  return s;
}

}  // namespace gfstab
