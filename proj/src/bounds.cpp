#include "gfstab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "gfstab/laplacian.hpp"

namespace gfstab {

namespace {

double inv_sqrt(int a, int b) { return 1.0 / std::sqrt(static_cast<double>(a) * b); }

std::optional<double> ratio(double bound, double actual) {
  if (!(actual > 0)) return std::nullopt;
  return bound / actual;
}

void require_same_order(const Graph& g, const Graph& gp) {
  if (g.num_nodes() != gp.num_nodes())
    throw std::invalid_argument("graphs have different node counts");
}

}  // namespace

NodePerturbStats node_stats(const Graph& g, const Graph& gp, Node u) {
  require_same_order(g, gp);
  if (u < 0 || u >= g.num_nodes()) throw GraphError("node " + std::to_string(u) + " out of range");
  if (g.degree(u) == 0 || gp.degree(u) == 0)
    throw GraphError("node " + std::to_string(u) + " is isolated");
  NodePerturbStats s;
  s.u = u;
  s.d = g.degree(u);
  s.d_p = gp.degree(u);
  for (Node v : gp.neighbours(u)) s.added += !g.has_edge(u, v);
  for (Node v : g.neighbours(u)) s.deleted += !gp.has_edge(u, v);

  auto rel_change = [&](Node v) {
    return std::abs(static_cast<double>(gp.degree(v) - g.degree(v))) / g.degree(v);
  };
  s.alpha = rel_change(u);
  s.min_nb = std::numeric_limits<int>::max();
  for (Node v : g.neighbours(u)) {
    s.alpha = std::max(s.alpha, rel_change(v));
    s.min_nb = std::min(s.min_nb, g.degree(v));
  }
  s.min_nb_p = std::numeric_limits<int>::max();
  for (Node v : gp.neighbours(u)) s.min_nb_p = std::min(s.min_nb_p, gp.degree(v));
  s.rewirings = s.added == s.deleted ? s.deleted : 0;
  return s;
}

std::vector<NodePerturbStats> all_node_stats(const Graph& g, const Graph& gp) {
  std::vector<NodePerturbStats> out;
  out.reserve(static_cast<std::size_t>(g.num_nodes()));
  for (Node u = 0; u < g.num_nodes(); ++u) out.push_back(node_stats(g, gp, u));
  return out;
}

RowTerms exact_row_terms(const Graph& g, const Graph& gp, Node u) {
  require_same_order(g, gp);
  if (g.degree(u) == 0 || gp.degree(u) == 0)
    throw GraphError("node " + std::to_string(u) + " is isolated");
  RowTerms t;
  const int du = g.degree(u), dpu = gp.degree(u);
  for (Node v : g.neighbours(u)) {
    if (gp.has_edge(u, v))
      t.remaining += std::abs(inv_sqrt(du, g.degree(v)) - inv_sqrt(dpu, gp.degree(v)));
    else
      t.deleted += inv_sqrt(du, g.degree(v));
  }
  for (Node v : gp.neighbours(u))
    if (!g.has_edge(u, v)) t.added += inv_sqrt(dpu, gp.degree(v));
  return t;
}

TermBounds term_bounds(const NodePerturbStats& s) {
  TermBounds b;
  b.deleted = s.deleted * inv_sqrt(s.d, s.min_nb);
  b.added = s.added * inv_sqrt(s.d_p, s.min_nb_p);
  if (s.alpha < 1)
    b.remaining = (s.alpha / (1.0 - s.alpha)) * (s.d - s.deleted) * inv_sqrt(s.d, s.min_nb);
  return b;
}

std::optional<double> node_bound(const NodePerturbStats& s) {
  TermBounds b = term_bounds(s);
  if (!b.valid()) return std::nullopt;
  return b.deleted + b.added + *b.remaining;
}

TheoremBound theorem_bound(const Graph& g, const Graph& gp) {
  if (has_isolated(g) || has_isolated(gp)) throw GraphError("theorem bound needs graphs without isolated nodes");
  TheoremBound t;
  for (Node u = 0; u < g.num_nodes(); ++u) {
    auto b = node_bound(node_stats(g, gp, u));
    if (b) t.value = std::max(t.value, *b);
    else t.valid = false;
  }
  return t;
}

double rewiring_bound(const Graph& g, const Perturbation& p) {
  Graph gp = apply_perturbation(g, p);
  if (gp.degrees() != g.degrees()) throw std::invalid_argument("perturbation changes node degrees");
  double best = 0;
  for (Node u = 0; u < g.num_nodes(); ++u) {
    if (g.degree(u) == 0) continue;
    NodePerturbStats s = node_stats(g, gp, u);
    best = std::max(best, 2.0 * s.rewirings * inv_sqrt(s.d, s.min_nb));
  }
  return best;
}

bool BoundReport::chain_holds(double tol) const {
  if (rel_output_distance && *rel_output_distance > filter_distance + tol) return false;
  if (filter_distance > stability_constant * e2 + tol) return false;
  if (e2 > e1 + tol) return false;
  if (theorem.valid && e1 > theorem.value + tol) return false;
  return true;
}

BoundReport chain_bound(const SpectralFilter& f, const Graph& g, const Graph& gp,
                        const std::optional<Signal>& x) {
  if (f.gso != GsoKind::NormalizedLaplacian && f.gso != GsoKind::ShiftedLaplacian)
    throw std::invalid_argument("chain bound needs a filter on L or L - I, got " + to_string(f.gso));
  require_same_order(g, gp);

  BoundReport r;
  for (Node u = 0; u < g.num_nodes(); ++u) {
    NodeReport nr;
    nr.stats = node_stats(g, gp, u);
    nr.exact = exact_row_terms(g, gp, u);
    nr.bounds = term_bounds(nr.stats);
    nr.bound = node_bound(nr.stats);
    r.nodes.push_back(nr);
  }
  r.theorem = theorem_bound(g, gp);

  const SymMatrix l = normalized_laplacian(g), lp = normalized_laplacian(gp);
  const SymMatrix e = error_matrix(l, lp);
  r.e1 = matrix_one_norm(e);
  r.e2 = operator_norm(e);
  if (g.degrees() == gp.degrees()) r.corollary = rewiring_bound(g, diff(g, gp));

  const SymMatrix s = graph_shift_operator(g, f.gso), sp = graph_shift_operator(gp, f.gso);
  r.stability_constant = stability_constant(f);
  r.chain = r.stability_constant * r.theorem.value;
  r.filter_distance = filter_distance(f, s, sp);
  if (x) r.rel_output_distance = relative_output_distance(f, s, sp, *x);

  if (r.rel_output_distance) r.loose_rod_fd = ratio(r.filter_distance, *r.rel_output_distance);
  r.loose_fd_ce2 = ratio(r.stability_constant * r.e2, r.filter_distance);
  r.loose_e2_e1 = ratio(r.e1, r.e2);
  r.loose_e1_thm = ratio(r.theorem.value, r.e1);
  return r;
}

void write_bound_report(std::ostream& os, const BoundReport& r, bool per_node) {
  auto opt = [](const std::optional<double>& v) -> std::string {
    if (!v) return "NA";
    std::ostringstream s;
    s << std::setprecision(17) << *v;
    return s.str();
  };
  os << std::setprecision(17);
  os << "valid " << (r.theorem.valid ? "true" : "false") << "\n"
     << "E1 " << r.e1 << "\n"
     << "E2 " << r.e2 << "\n"
     << "thm_bound " << r.theorem.value << "\n"
     << "corollary_bound " << opt(r.corollary) << "\n"
     << "stability_constant " << r.stability_constant << "\n"
     << "chain_bound " << r.chain << "\n"
     << "filter_distance " << r.filter_distance << "\n"
     << "rel_output_distance " << opt(r.rel_output_distance) << "\n"
     << "loose_rod_fd " << opt(r.loose_rod_fd) << "\n"
     << "loose_fd_CE2 " << opt(r.loose_fd_ce2) << "\n"
     << "loose_E2_E1 " << opt(r.loose_e2_e1) << "\n"
     << "loose_E1_thm " << opt(r.loose_e1_thm) << "\n";
  if (!per_node) return;
  os << "node d d_p added deleted min_nb min_nb_p alpha deleted_sum added_sum remaining_sum "
        "row_norm deleted_bound added_bound remaining_bound node_bound\n";
  for (const NodeReport& n : r.nodes) {
    const NodePerturbStats& s = n.stats;
    os << s.u << ' ' << s.d << ' ' << s.d_p << ' ' << s.added << ' ' << s.deleted << ' '
       << s.min_nb << ' ' << s.min_nb_p << ' ' << s.alpha << ' ' << n.exact.deleted << ' '
       << n.exact.added << ' ' << n.exact.remaining << ' ' << n.exact.total() << ' '
       << n.bounds.deleted << ' ' << n.bounds.added << ' ' << opt(n.bounds.remaining) << ' '
       << opt(n.bound) << "\n";
  }
}

Lemma1Result lemma1_oracle(int du, int dv, double alpha, int grid) {
  if (du < 1 || dv < 1) throw std::invalid_argument("degrees must be positive");
  if (!(alpha >= 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in [0, 1)");
  if (grid < 2) throw std::invalid_argument("grid needs at least two points per axis");
  const double base = inv_sqrt(du, dv);
  Lemma1Result best{0, 0, -1};
  for (int i = 0; i < grid; ++i) {
    const double x = -alpha * du + 2.0 * alpha * du * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double y = -alpha * dv + 2.0 * alpha * dv * j / (grid - 1);
      const double v = std::abs(base - 1.0 / std::sqrt((du + x) * (dv + y)));
      if (v > best.value) best = {x, y, v};
    }
  }
  return best;
}

}  // namespace gfstab
