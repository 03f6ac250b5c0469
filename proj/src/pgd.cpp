#include "gfstab/pgd.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <sstream>

#include "gfstab/laplacian.hpp"

namespace gfstab {

void PgdParams::validate() const {
  if (iterations < 1 || trials < 1) throw std::invalid_argument("PGD needs T >= 1 and K >= 1");
  if (!(noise_std >= 0)) throw std::invalid_argument("PGD noise scale must be nonnegative");
  if (!(eta > 0)) throw std::invalid_argument("PGD step size must be positive");
}

std::vector<Edge> pair_list(int n) {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

PgdObjective::PgdObjective(const Graph& g, const Signal& y_clean, const Signal& x_noisy,
                           double alpha)
    : g_(g), a_(Eigen::MatrixXd::Zero(g.num_nodes(), g.num_nodes())), y_(y_clean), x_(x_noisy),
      alpha_(alpha), pairs_(pair_list(g.num_nodes())) {
  if (y_.size() != g.num_nodes() || x_.size() != g.num_nodes())
    throw std::invalid_argument("signal length does not match the graph");
  if (y_.norm() == 0) throw std::invalid_argument("target signal is zero");
  for (const Edge& e : g.edges()) a_(e.u, e.v) = a_(e.v, e.u) = 1.0;
}

Eigen::MatrixXd PgdObjective::relaxed_adjacency(const Eigen::VectorXd& s,
                                                const Eigen::VectorXd& diag) const {
  Eigen::MatrixXd ap = a_;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const Edge& e = pairs_[p];
    const double v = std::clamp(a_(e.u, e.v) + (1.0 - 2.0 * a_(e.u, e.v)) * s[static_cast<Eigen::Index>(p)], 0.0, 1.0);
    ap(e.u, e.v) = ap(e.v, e.u) = v;
  }
  for (Eigen::Index i = 0; i < ap.rows(); ++i) ap(i, i) = std::clamp(diag[i], 0.0, 1.0);
  return ap;
}

double PgdObjective::loss(const Eigen::VectorXd& s, const Eigen::VectorXd& diag) const {
  Eigen::VectorXd unused;
  return loss_and_gradient(s, diag, unused);
}

double PgdObjective::loss_and_gradient(const Eigen::VectorXd& s, const Eigen::VectorXd& diag,
                                       Eigen::VectorXd& grad) const {
  const Eigen::Index n = a_.rows();
  const Eigen::MatrixXd ap = relaxed_adjacency(s, diag);
  const Eigen::VectorXd d = ap.rowwise().sum();
  Eigen::VectorXd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = d[i] > 0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  const Eigen::MatrixXd nrm = q.asDiagonal() * ap * q.asDiagonal();
  const Eigen::MatrixXd m =
      (1.0 + alpha_) * Eigen::MatrixXd::Identity(n, n) - alpha_ * nrm;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const Eigen::VectorXd yhat = lu.solve(x_);
  const Eigen::VectorXd r = yhat - y_;
  const double rn = r.norm(), yn = y_.norm();
  const double value = rn / yn;

  grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pairs_.size()));
  if (rn == 0) return value;
  const Eigen::VectorXd lam = lu.solve(r / (rn * yn));
  const Eigen::MatrixXd gn = alpha_ * lam * yhat.transpose();
  const Eigen::MatrixXd gsym = gn + gn.transpose();
  Eigen::VectorXd gd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double gq = (gsym.row(i).transpose().cwiseProduct(ap.row(i).transpose())).dot(q);
    gd[i] = d[i] > 0 ? -0.5 * std::pow(d[i], -1.5) * gq : 0.0;
  }
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const Node i = pairs_[p].u, j = pairs_[p].v;
    const double ga_ij = gn(i, j) * q[i] * q[j] + gd[i];
    const double ga_ji = gn(j, i) * q[j] * q[i] + gd[j];
    grad[static_cast<Eigen::Index>(p)] = (ga_ij + ga_ji) * (1.0 - 2.0 * a_(i, j));
  }
  return value;
}

double PgdObjective::discrete_loss(const Perturbation& p) const {
  const Graph gp = apply_perturbation(g_, p);
  const Signal yhat = lowpass_solve(alpha_, normalized_laplacian(gp), x_);
  return (y_ - yhat).norm() / y_.norm();
}

Eigen::VectorXd project_capped_box(const Eigen::VectorXd& s, double budget) {
  if (budget < 0) throw std::invalid_argument("projection budget must be nonnegative");
  auto shifted = [&](double mu) {
    return (s.array() - mu).cwiseMax(0.0).cwiseMin(1.0).matrix().eval();
  };
  Eigen::VectorXd base = shifted(0.0);
  if (base.sum() <= budget) return base;
  double lo = 0.0, hi = s.maxCoeff();
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (shifted(mid).sum() > budget) lo = mid;
    else hi = mid;
  }
  return shifted(hi);
}

Perturbation strat_pgd(const Graph& g, Budget budget, const Signal& x_clean,
                       const Signal& x_noisy, const SpectralFilter& filter,
                       const PgdParams& params, Rng& rng) {
  if (filter.kind != FilterKind::LowPass)
    throw std::invalid_argument("PGD attacks the lowpass filter only");
  params.validate();
  if (budget.edits == 0) return {};

  const int n = g.num_nodes();
  PgdObjective obj(g, x_clean, x_noisy, filter.alpha);
  const double cap = budget.edits;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(obj.num_pairs());
  Eigen::VectorXd grad;
  std::normal_distribution<double> jitter(0.0, params.noise_std);
  Eigen::VectorXd diag(n);
  for (int t = 1; t <= params.iterations; ++t) {
    for (int i = 0; i < n; ++i) diag[i] = params.noise_std > 0 ? jitter(rng) : 0.0;
    obj.loss_and_gradient(s, diag, grad);
    s = project_capped_box(s + (params.eta / std::sqrt(static_cast<double>(t))) * grad, cap);
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& pairs = obj.pairs();
  double best_loss = -1;
  Perturbation best;
  int over_budget = 0, isolating = 0;
  for (int k = 0; k < params.trials; ++k) {
    std::vector<Edge> add, del;
    std::vector<int> deg = g.degrees();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (!(unit(rng) < s[static_cast<Eigen::Index>(p)])) continue;
      const Edge& e = pairs[p];
      const int step = g.has_edge(e.u, e.v) ? -1 : 1;
      (step < 0 ? del : add).push_back(e);
      deg[static_cast<std::size_t>(e.u)] += step;
      deg[static_cast<std::size_t>(e.v)] += step;
    }
    if (static_cast<int>(add.size() + del.size()) > budget.edits) {
      ++over_budget;
      continue;
    }
    if (std::find(deg.begin(), deg.end(), 0) != deg.end()) {
      ++isolating;
      continue;
    }
    Perturbation cand(std::move(add), std::move(del));
    const double l = obj.discrete_loss(cand);
    if (l > best_loss) {
      best_loss = l;
      best = std::move(cand);
    }
  }
  if (best_loss < 0) {
    std::ostringstream os;
    os << "all " << params.trials << " PGD samples infeasible (" << over_budget
       << " over budget, " << isolating << " with isolated nodes; sum(s) = " << s.sum() << ")";
    throw PerturbError(os.str());
  }
  return best;
}

}  // namespace gfstab
