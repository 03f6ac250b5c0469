#include "gfstab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace gfstab {

Eigen::MatrixXd EigenSystem::reconstruct() const {
  return vectors * values.asDiagonal() * vectors.transpose();
}

namespace {

double off_diagonal_mass(const Eigen::MatrixXd& a) {
  double s = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// Rotates rows/columns p and q of the symmetric working matrix a so that
// a(p,q) becomes zero, accumulating the rotation into v.
void jacobi_rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Eigen::Index n = a.rows();

  for (Eigen::Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> col) {
  const double peak = col.cwiseAbs().maxCoeff();
  if (peak == 0.0) return;
  const double tie = peak * (1.0 - 1e-12);
  for (Eigen::Index i = 0; i < col.size(); ++i) {
    if (std::abs(col[i]) >= tie) {
      if (col[i] < 0) col = -col;
      return;
    }
  }
}

}  // namespace

EigenSystem eig_sym(const SymMatrix& m, const JacobiOptions& opts) {
  const Eigen::Index n = m.order();
  Eigen::MatrixXd a = m.dense();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double target = opts.tolerance * scale;

  int sweep = 0;
  while (scale > 0 && off_diagonal_mass(a) > target) {
    if (sweep++ >= opts.max_sweeps) {
      throw EigenError("Jacobi eigensolver did not converge within " +
                       std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    es.values[k] = a(src, src);
    es.vectors.col(k) = v.col(src);
    fix_sign(es.vectors.col(k));
  }
  return es;
}

SpectralFilter SpectralFilter::lowpass(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("low-pass alpha must be positive");
  SpectralFilter f;
  f.kind = FilterKind::LowPass;
  f.alpha = alpha;
  f.gso = GsoKind::NormalizedLaplacian;
  return f;
}

SpectralFilter SpectralFilter::polynomial(std::vector<double> theta, GsoKind gso) {
  if (theta.empty()) throw std::invalid_argument("polynomial needs at least theta_0");
  SpectralFilter f;
  f.kind = FilterKind::Polynomial;
  f.coefficients = std::move(theta);
  f.gso = gso;
  return f;
}

SpectralFilter SpectralFilter::monomial(int k, GsoKind gso) {
  if (k < 0) throw std::invalid_argument("monomial power must be non-negative");
  SpectralFilter f;
  f.kind = FilterKind::Monomial;
  f.power = k;
  f.gso = gso;
  return f;
}

SpectralFilter SpectralFilter::identity(GsoKind gso) {
  SpectralFilter f;
  f.kind = FilterKind::Identity;
  f.gso = gso;
  return f;
}

double SpectralFilter::response(double lambda) const {
  switch (kind) {
    case FilterKind::LowPass:
      return 1.0 / (1.0 + alpha * lambda);
    case FilterKind::Polynomial: {
      double acc = 0;  // Horner
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * lambda + *it;
      return acc;
    }
    case FilterKind::Monomial:
      return std::pow(lambda, power);
    case FilterKind::Identity:
      return lambda;
  }
  return 0;
}

std::string to_string(FilterKind k) {
  switch (k) {
    case FilterKind::LowPass: return "lowpass";
    case FilterKind::Polynomial: return "polynomial";
    case FilterKind::Monomial: return "monomial";
    case FilterKind::Identity: return "identity";
  }
  return "?";
}

std::string to_string(GsoKind k) {
  switch (k) {
    case GsoKind::NormalizedLaplacian: return "laplacian";
    case GsoKind::ShiftedLaplacian: return "shifted_laplacian";
    case GsoKind::ScaledShiftedLaplacian: return "scaled_shifted_laplacian";
    case GsoKind::AugmentedAdjacency: return "augmented_adjacency";
  }
  return "?";
}

FilterKind parse_filter_kind(const std::string& s) {
  for (auto k : {FilterKind::LowPass, FilterKind::Polynomial, FilterKind::Monomial,
                 FilterKind::Identity})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown filter kind '" + s + "'");
}

GsoKind parse_gso_kind(const std::string& s) {
  for (auto k : {GsoKind::NormalizedLaplacian, GsoKind::ShiftedLaplacian,
                 GsoKind::ScaledShiftedLaplacian, GsoKind::AugmentedAdjacency})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown shift operator '" + s + "'");
}

double stability_constant(const SpectralFilter& f) {
  switch (f.kind) {
    case FilterKind::Polynomial: {
      double c = 0;
      for (std::size_t k = 1; k < f.coefficients.size(); ++k)
        c += static_cast<double>(k) * std::abs(f.coefficients[k]);
      return c;
    }
    case FilterKind::LowPass: return f.alpha;
    case FilterKind::Monomial: return f.power;
    case FilterKind::Identity: return 1.0;
  }
  return 0;
}

SymMatrix graph_shift_operator(const Graph& g, GsoKind kind) {
  switch (kind) {
    case GsoKind::NormalizedLaplacian:
      return normalized_laplacian(g);
    case GsoKind::ShiftedLaplacian: {
      SymMatrix l = normalized_laplacian(g);
      Eigen::MatrixXd m = l.dense();
      m.diagonal().array() -= 1.0;
      return SymMatrix::from_dense(std::move(m));
    }
    case GsoKind::ScaledShiftedLaplacian: {
      SymMatrix l = normalized_laplacian(g);
      const double lmax = eig_sym(l).values.maxCoeff();
      Eigen::MatrixXd m = l.dense();
      if (lmax > 0) m *= 2.0 / lmax;
      m.diagonal().array() -= 1.0;
      return SymMatrix::from_dense(std::move(m));
    }
    case GsoKind::AugmentedAdjacency: {
      SymMatrix s(g.num_nodes());
      for (Node u = 0; u < g.num_nodes(); ++u) s.set(u, u, 1.0 / (g.degree(u) + 1.0));
      for (const Edge& e : g.edges()) {
        const double du = g.degree(e.u) + 1.0;
        const double dv = g.degree(e.v) + 1.0;
        s.set(e.u, e.v, 1.0 / std::sqrt(du * dv));
      }
      return s;
    }
  }
  throw std::invalid_argument("unknown shift operator");
}

Eigen::MatrixXd filter_matrix(const SpectralFilter& f, const EigenSystem& es) {
  Eigen::VectorXd gains(es.order());
  for (int i = 0; i < es.order(); ++i) gains[i] = f.response(es.values[i]);
  return es.vectors * gains.asDiagonal() * es.vectors.transpose();
}

Signal apply_filter(const SpectralFilter& f, const SymMatrix& gso, const Signal& x) {
  if (x.size() != gso.order())
    throw std::invalid_argument("apply_filter: signal length does not match operator order");
  const EigenSystem es = eig_sym(gso);
  Eigen::VectorXd spectrum = es.vectors.transpose() * x;
  for (int i = 0; i < es.order(); ++i) spectrum[i] *= f.response(es.values[i]);
  return es.vectors * spectrum;
}

Signal lowpass_solve(double alpha, const SymMatrix& l, const Signal& x) {
  if (!(alpha > 0)) throw std::invalid_argument("low-pass alpha must be positive");
  if (x.size() != l.order())
    throw std::invalid_argument("lowpass_solve: signal length does not match operator order");
  Eigen::MatrixXd system = alpha * l.dense();
  system.diagonal().array() += 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  return lu.solve(x);
}

double operator_norm(const SymMatrix& m) {
  if (m.order() == 0) return 0;
  return eig_sym(m).values.cwiseAbs().maxCoeff();
}

double operator_norm_power(const SymMatrix& m, const PowerOptions& opts) {
  const Eigen::Index n = m.order();
  if (n == 0) return 0;
  const Eigen::MatrixXd& a = m.dense();
  std::mt19937_64 gen(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = unif(gen);
  v.normalize();

  double estimate = 0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Eigen::VectorXd w = a * v;
    const double next = w.norm();  // ||M v|| with ||v|| = 1
    if (next == 0) return 0;
    Eigen::VectorXd z = a * w;     // M^2 v
    const double zn = z.norm();
    if (zn == 0) return next;
    v = z / zn;
    if (std::abs(next - estimate) <= opts.tolerance * next) return next;
    estimate = next;
  }
  return estimate;
}

double row_one_norm(const SymMatrix& m, int u) {
  return m.dense().row(u).cwiseAbs().sum();
}

double matrix_one_norm(const SymMatrix& m) {
  if (m.order() == 0) return 0;
  return m.dense().cwiseAbs().rowwise().sum().maxCoeff();
}

double filter_distance(const Eigen::MatrixXd& gs, const Eigen::MatrixXd& gsp) {
  return operator_norm(SymMatrix::symmetrized(gs - gsp));
}

double filter_distance(const SpectralFilter& f, const SymMatrix& s, const SymMatrix& sp) {
  if (s.order() != sp.order()) throw std::invalid_argument("filter_distance: order mismatch");
  return filter_distance(filter_matrix(f, eig_sym(s)), filter_matrix(f, eig_sym(sp)));
}

double relative_output_distance(const Eigen::MatrixXd& gs, const Eigen::MatrixXd& gsp,
                                const Signal& x) {
  const double xn = x.norm();
  if (!(xn > 0)) throw std::invalid_argument("relative_output_distance: zero signal");
  return (gs * x - gsp * x).norm() / xn;
}

double relative_output_distance(const SpectralFilter& f, const SymMatrix& s,
                                const SymMatrix& sp, const Signal& x) {
  if (!(x.norm() > 0)) throw std::invalid_argument("relative_output_distance: zero signal");
  return (apply_filter(f, s, x) - apply_filter(f, sp, x)).norm() / x.norm();
}

}  // namespace gfstab
