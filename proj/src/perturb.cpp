#include "gfstab/perturb.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

#include "gfstab/editable_graph.hpp"
#include "gfstab/laplacian.hpp"

namespace gfstab {

Budget::Budget(int e) : edits(e) {
  if (e < 0) throw std::invalid_argument("budget must be nonnegative");
}

Budget Budget::fraction_of_edges(const Graph& g, double fraction) {
  if (!(fraction >= 0)) throw std::invalid_argument("budget fraction must be nonnegative");
  return Budget(static_cast<int>(std::floor(fraction * static_cast<double>(g.num_edges()))));
}

std::string to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::Delete: return "Delete";
    case StrategyKind::Add: return "Add";
    case StrategyKind::AddDelete: return "AddDelete";
    case StrategyKind::Rewire: return "Rewire";
    case StrategyKind::Robust: return "Robust";
    case StrategyKind::Pgd: return "PGD";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& s) {
  std::string key;
  for (unsigned char c : s)
    if (std::isalnum(c)) key.push_back(static_cast<char>(std::tolower(c)));
  if (key == "delete") return StrategyKind::Delete;
  if (key == "add") return StrategyKind::Add;
  if (key == "adddelete") return StrategyKind::AddDelete;
  if (key == "rewire") return StrategyKind::Rewire;
  if (key == "robust") return StrategyKind::Robust;
  if (key == "pgd") return StrategyKind::Pgd;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

namespace {

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  const int n = g.num_nodes();
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<Edge> pick_deletions(const Graph& g, int count, Rng& rng) {
  if (static_cast<std::size_t>(count) > g.num_edges())
    throw std::invalid_argument("delete budget exceeds the number of edges");
  // Scanning a shuffled edge list equals drawing uniformly and redrawing
  // rejected candidates: degrees only fall, so a rejected edge stays rejected.
  std::vector<Edge> pool = g.edges();
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<int> deg = g.degrees();
  std::vector<Edge> out;
  for (const Edge& e : pool) {
    if (static_cast<int>(out.size()) == count) break;
    int& du = deg[static_cast<std::size_t>(e.u)];
    int& dv = deg[static_cast<std::size_t>(e.v)];
    if (du < 2 || dv < 2) continue;
    --du;
    --dv;
    out.push_back(e);
  }
  if (static_cast<int>(out.size()) < count)
    throw PerturbError("cannot delete " + std::to_string(count) +
                       " edges without isolating a node (found " +
                       std::to_string(out.size()) + ")");
  return out;
}

std::vector<Edge> pick_additions(const Graph& g, int count, Rng& rng) {
  std::vector<Edge> pool = non_edges(g);
  if (static_cast<std::size_t>(count) > pool.size())
    throw PerturbError("cannot add " + std::to_string(count) + " edges: only " +
                       std::to_string(pool.size()) + " non-edges");
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace

Perturbation strat_delete(const Graph& g, Budget budget, Rng& rng) {
  return Perturbation({}, pick_deletions(g, budget.edits, rng));
}

Perturbation strat_add(const Graph& g, Budget budget, Rng& rng) {
  return Perturbation(pick_additions(g, budget.edits, rng), {});
}

Perturbation strat_add_delete(const Graph& g, Budget budget, Rng& rng) {
  const int n_del = (budget.edits + 1) / 2;
  const int n_add = budget.edits / 2;
  std::vector<Edge> del = pick_deletions(g, n_del, rng);
  std::vector<Edge> add = pick_additions(g, n_add, rng);
  return Perturbation(std::move(add), std::move(del));
}

Perturbation strat_rewire(const Graph& g, Budget budget, Rng& rng, int max_draws) {
  const int ops = budget.edits / 4;
  if (ops == 0) return {};
  EditableGraph cur(g);
  std::vector<Edge> pool = g.edges();  // original edges still present
  std::set<Edge> deleted;
  std::bernoulli_distribution flip(0.5);
  for (int op = 0; op < ops; ++op) {
    bool done = false;
    for (int draw = 0; draw < max_draws && pool.size() >= 2 && !done; ++draw) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::size_t i = pick(rng);
      const std::size_t j = pick(rng);
      if (i == j) continue;
      const Node u = pool[i].u, v = pool[i].v;
      Node up = pool[j].u, vp = pool[j].v;
      if (flip(rng)) std::swap(up, vp);
      if (u == up || u == vp || v == up || v == vp) continue;
      if (cur.has_edge(u, up) || cur.has_edge(v, vp) || cur.has_edge(u, vp) ||
          cur.has_edge(v, up))
        continue;
      if (deleted.count(Edge(u, up)) || deleted.count(Edge(v, vp))) continue;
      cur.remove_edge(u, v);
      cur.remove_edge(up, vp);
      cur.add_edge(u, up);
      cur.add_edge(v, vp);
      deleted.insert(pool[i]);
      deleted.insert(pool[j]);
      const std::size_t hi = std::max(i, j), lo = std::min(i, j);
      pool[hi] = pool.back();
      pool.pop_back();
      pool[lo] = pool.back();
      pool.pop_back();
      done = true;
    }
    if (!done)
      throw PerturbError("no admissible rewiring pair after " + std::to_string(max_draws) +
                         " draws (operation " + std::to_string(op + 1) + " of " +
                         std::to_string(ops) + ")");
  }
  return diff(g, cur.to_graph());
}

Perturbation strat_robust(const Graph& g, Budget budget) {
  const int n = g.num_nodes();
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  if (budget.edits > pairs) throw std::invalid_argument("budget exceeds the number of node pairs");
  if (budget.edits == 0) return {};

  const Eigen::MatrixXd l0 = normalized_laplacian(g).dense();
  Eigen::MatrixXd lc = l0;
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
  Eigen::MatrixXi flipped = Eigen::MatrixXi::Zero(n, n);
  for (const Edge& e : g.edges()) adj(e.u, e.v) = adj(e.v, e.u) = 1;
  std::vector<int> deg = g.degrees();
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(n);  // row sums of |Lc - L0|

  auto entry = [&](int x, int y, int dx, int dy, bool linked) {
    if (x == y) return dx > 0 ? 1.0 : 0.0;
    return linked ? -1.0 / std::sqrt(static_cast<double>(dx) * dy) : 0.0;
  };

  std::vector<Edge> added, removed;
  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (int step = 0; step < budget.edits; ++step) {
    for (int x = 0; x < n; ++x) rows[x] = (lc.row(x) - l0.row(x)).cwiseAbs().sum();

    double best = std::numeric_limits<double>::infinity();
    int best_a = -1, best_b = -1;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (flipped(a, b)) continue;
        const bool linked = adj(a, b) == 0;
        const int step_deg = linked ? 1 : -1;
        const int da = deg[static_cast<std::size_t>(a)] + step_deg;
        const int db = deg[static_cast<std::size_t>(b)] + step_deg;
        if (da == 0 || db == 0) continue;

        auto new_deg = [&](int y) {
          return y == a ? da : y == b ? db : deg[static_cast<std::size_t>(y)];
        };
        auto new_adj = [&](int x, int y) {
          return (x == a && y == b) || (x == b && y == a) ? linked : adj(x, y) != 0;
        };
        double worst = 0;
        for (int r : {a, b}) {
          double s = 0;
          const int dr = new_deg(r);
          for (int y = 0; y < n; ++y) s += std::abs(entry(r, y, dr, new_deg(y), new_adj(r, y)) - l0(r, y));
          worst = std::max(worst, s);
        }
        if (worst >= best) continue;
        for (int x = 0; x < n && worst < best; ++x) {
          if (x == a || x == b) continue;
          double s = rows[x];
          const int dx = deg[static_cast<std::size_t>(x)];
          if (adj(x, a)) s += std::abs(entry(x, a, dx, da, true) - l0(x, a)) - std::abs(lc(x, a) - l0(x, a));
          if (adj(x, b)) s += std::abs(entry(x, b, dx, db, true) - l0(x, b)) - std::abs(lc(x, b) - l0(x, b));
          worst = std::max(worst, s);
        }
        if (worst < best) {
          best = worst;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0)
      throw PerturbError("no admissible flip remains after " + std::to_string(step) + " flips");

    const int a = best_a, b = best_b;
    flipped(a, b) = flipped(b, a) = 1;
    const bool linked = adj(a, b) == 0;
    adj(a, b) = adj(b, a) = linked ? 1 : 0;
    deg[static_cast<std::size_t>(a)] += linked ? 1 : -1;
    deg[static_cast<std::size_t>(b)] += linked ? 1 : -1;
    (linked ? added : removed).emplace_back(a, b);
    for (int r : {a, b}) {
      for (int y = 0; y < n; ++y) {
        const double v = entry(r, y, deg[static_cast<std::size_t>(r)], deg[static_cast<std::size_t>(y)], adj(r, y) != 0);
        lc(r, y) = v;
        lc(y, r) = v;
      }
    }
  }
  return Perturbation(std::move(added), std::move(removed));
}

}  // namespace gfstab
