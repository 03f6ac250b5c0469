// Spectral machinery: symmetric eigensolver, graph Fourier filtering, matrix
// norms, and the filter-level distances used by the stability analysis.

#ifndef GFSTAB_SPECTRAL_HPP
#define GFSTAB_SPECTRAL_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfstab/graph.hpp"
#include "gfstab/laplacian.hpp"

namespace gfstab {

using Signal = Eigen::VectorXd;

class EigenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues in ascending order; eigenvectors are the orthonormal columns
/// of `vectors`, column i belonging to values[i].
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  int order() const { return static_cast<int>(values.size()); }
  /// U diag(values) U^T
  Eigen::MatrixXd reconstruct() const;
};

struct JacobiOptions {
  /// Convergence when the off-diagonal Frobenius mass falls to
  /// tolerance * ||M||_F.
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigendecomposition. Each eigenvector is signed so that its
/// largest-magnitude entry is positive (the first such entry on ties).
/// Throws EigenError when the sweep budget runs out.
EigenSystem eig_sym(const SymMatrix& m, const JacobiOptions& opts = {});

/// Graph shift operators a filter may be defined on.
enum class GsoKind {
  NormalizedLaplacian,     // L
  ShiftedLaplacian,        // L - I, spectrum in [-1, 1]
  ScaledShiftedLaplacian,  // 2L / lambda_max - I
  AugmentedAdjacency,      // (D+I)^{-1/2} (A+I) (D+I)^{-1/2}
};

enum class FilterKind { LowPass, Polynomial, Monomial, Identity };

struct SpectralFilter {
  FilterKind kind = FilterKind::Identity;
  double alpha = 1.0;                 // LowPass
  std::vector<double> coefficients;   // Polynomial: theta_0 .. theta_K
  int power = 1;                      // Monomial
  GsoKind gso = GsoKind::NormalizedLaplacian;

  static SpectralFilter lowpass(double alpha);
  static SpectralFilter polynomial(std::vector<double> theta,
                                   GsoKind gso = GsoKind::ShiftedLaplacian);
  static SpectralFilter monomial(int k, GsoKind gso = GsoKind::AugmentedAdjacency);
  static SpectralFilter identity(GsoKind gso = GsoKind::NormalizedLaplacian);

  /// g(lambda)
  double response(double lambda) const;
};

std::string to_string(FilterKind k);
std::string to_string(GsoKind k);
FilterKind parse_filter_kind(const std::string& s);
GsoKind parse_gso_kind(const std::string& s);

/// Linear-stability constant C: sum_k k|theta_k| for polynomials, alpha for
/// the low-pass filter, K for monomials, 1 for the identity.
double stability_constant(const SpectralFilter& f);

SymMatrix graph_shift_operator(const Graph& g, GsoKind kind);

/// U g(Lambda) U^T
Eigen::MatrixXd filter_matrix(const SpectralFilter& f, const EigenSystem& es);

/// y = sum_i g(lambda_i) <u_i, x> u_i
Signal apply_filter(const SpectralFilter& f, const SymMatrix& gso, const Signal& x);

/// Solves (I + alpha L) y = x with an LU factorization.
Signal lowpass_solve(double alpha, const SymMatrix& l, const Signal& x);

/// Spectral norm max_i |lambda_i(m)|, from the eigensolver.
double operator_norm(const SymMatrix& m);

struct PowerOptions {
  double tolerance = 1e-13;
  int max_iterations = 50000;
};
/// Spectral norm by power iteration on m^2; a fast path that agrees with
/// operator_norm to ~1e-7 relative.
double operator_norm_power(const SymMatrix& m, const PowerOptions& opts = {});

/// Maximum absolute row sum.
double matrix_one_norm(const SymMatrix& m);
double row_one_norm(const SymMatrix& m, int u);

/// ||g(S) - g(S_p)||_2 for two shift operators of the same family.
double filter_distance(const SpectralFilter& f, const SymMatrix& s, const SymMatrix& sp);
double filter_distance(const Eigen::MatrixXd& gs, const Eigen::MatrixXd& gsp);

/// ||g(S) x - g(S_p) x||_2 / ||x||_2. Throws std::invalid_argument for x = 0.
double relative_output_distance(const SpectralFilter& f, const SymMatrix& s,
                                const SymMatrix& sp, const Signal& x);
double relative_output_distance(const Eigen::MatrixXd& gs, const Eigen::MatrixXd& gsp,
                                const Signal& x);

}  // namespace gfstab

#endif  // GFSTAB_SPECTRAL_HPP
