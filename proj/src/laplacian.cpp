#include "gfstab/laplacian.hpp"

#include <cmath>
#include <stdexcept>

namespace gfstab {

SymMatrix SymMatrix::from_dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        throw std::invalid_argument("matrix is not exactly symmetric");
  SymMatrix s;
  s.m_ = std::move(m);
  return s;
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  SymMatrix s(static_cast<int>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s.m_(i, i) = m(i, i);
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      s.set(static_cast<int>(i), static_cast<int>(j), 0.5 * (m(i, j) + m(j, i)));
  }
  return s;
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix s;
  s.m_ = Eigen::MatrixXd::Identity(n, n);
  return s;
}

SymMatrix normalized_laplacian(const Graph& g) {
  SymMatrix l(g.num_nodes());
  for (Node u = 0; u < g.num_nodes(); ++u)
    if (g.degree(u) > 0) l.set(u, u, 1.0);
  for (const Edge& e : g.edges()) {
    const double du = g.degree(e.u);
    const double dv = g.degree(e.v);
    l.set(e.u, e.v, -1.0 / std::sqrt(du * dv));
  }
  return l;
}

SymMatrix error_matrix(const SymMatrix& l, const SymMatrix& lp) {
  if (l.order() != lp.order())
    throw std::invalid_argument("error_matrix: order mismatch");
  // Elementwise subtraction of two exactly symmetric matrices is exactly
  // symmetric, so no re-mirroring is needed.
  return SymMatrix::from_dense(lp.dense() - l.dense());
}

}  // namespace gfstab
