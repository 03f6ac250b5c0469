// Dense symmetric matrices and the normalized Laplacian of a graph.

#ifndef GFSTAB_LAPLACIAN_HPP
#define GFSTAB_LAPLACIAN_HPP

#include <Eigen/Dense>

#include "gfstab/graph.hpp"

namespace gfstab {

/// Dense real symmetric matrix. Every mutation writes both (i,j) and (j,i),
/// so entry(i,j) == entry(j,i) holds bit-exactly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : m_(Eigen::MatrixXd::Zero(n, n)) {}

  /// Takes ownership of m; throws std::invalid_argument unless m is square
  /// and exactly symmetric.
  static SymMatrix from_dense(Eigen::MatrixXd m);
  /// Symmetrizes (m + m^T)/2 first.
  static SymMatrix symmetrized(const Eigen::MatrixXd& m);
  static SymMatrix identity(int n);

  int order() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }

  const Eigen::MatrixXd& dense() const { return m_; }

 private:
  Eigen::MatrixXd m_;
};

/// I - D^{-1/2} A D^{-1/2}; an isolated node gets a zero diagonal entry.
SymMatrix normalized_laplacian(const Graph& g);

/// E = lp - l, entrywise. Throws std::invalid_argument on order mismatch.
SymMatrix error_matrix(const SymMatrix& l, const SymMatrix& lp);

}  // namespace gfstab

#endif  // GFSTAB_LAPLACIAN_HPP
