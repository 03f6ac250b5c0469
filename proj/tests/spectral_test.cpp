#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "gfstab/laplacian.hpp"
#include "gfstab/spectral.hpp"

namespace gfstab {
namespace {

SymMatrix random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = z(rng);
  return SymMatrix::from_dense(m);
}

struct PerturbedPair {
  SymMatrix l, lp;
};

PerturbedPair random_pair(std::mt19937_64& rng, int n = 20) {
  Graph g = fixtures::random_connected(n, 0.15, rng);
  Graph gp = apply_perturbation(g, fixtures::random_perturbation(g, 0.15, 0.03, rng));
  return {normalized_laplacian(g), normalized_laplacian(gp)};
}

SymMatrix k3_error() {
  return error_matrix(normalized_laplacian(fixtures::k3()),
                      normalized_laplacian(apply_perturbation(fixtures::k3(), fixtures::k3_delete())));
}

SymMatrix c6_error() {
  return error_matrix(normalized_laplacian(fixtures::c6()),
                      normalized_laplacian(apply_perturbation(fixtures::c6(), fixtures::c6_rewire())));
}

// Largest root of lambda^2 - lambda/2 - 2t^2 with t = 1/2 - 1/sqrt(2): the
// characteristic polynomial of the K3-minus-an-edge error matrix restricted
// to the symmetric subspace (the antisymmetric mode contributes -1/2).
double k3_error_norm() {
  const double t = 0.5 - 1.0 / std::sqrt(2.0);
  return 0.5 * (0.5 + std::sqrt(0.25 + 8.0 * t * t));
}

TEST(EigSym, ZeroMatrix) {
  EigenSystem es = eig_sym(SymMatrix(3));
  EXPECT_TRUE(es.values.isZero(0.0));
  EXPECT_TRUE(es.vectors.isIdentity(0.0));
}

TEST(EigSym, TriangleLaplacian) {
  EigenSystem es = eig_sym(normalized_laplacian(complete_graph(3)));
  EXPECT_NEAR(es.values[0], 0.0, 1e-12);
  EXPECT_NEAR(es.values[1], 1.5, 1e-12);
  EXPECT_NEAR(es.values[2], 1.5, 1e-12);
}

TEST(EigSym, SingleEdgeLaplacian) {
  EigenSystem es = eig_sym(normalized_laplacian(path_graph(2)));
  EXPECT_NEAR(es.values[0], 0.0, 1e-14);
  EXPECT_NEAR(es.values[1], 2.0, 1e-14);
  // Sign convention: the tie in magnitude resolves to a positive first entry.
  EXPECT_GT(es.vectors(0, 1), 0.0);
  EXPECT_GT(es.vectors(0, 0), 0.0);
}

TEST(EigSym, RoundTripAndOrthonormality) {
  std::mt19937_64 rng(21);
  for (int n : {1, 2, 7, 40, 120, 200}) {
    SymMatrix m = random_symmetric(n, rng);
    EigenSystem es = eig_sym(m);
    const double scale = std::max(1.0, m.dense().norm());
    EXPECT_LE((es.reconstruct() - m.dense()).norm() / scale, 1e-8) << "n=" << n;
    EXPECT_LE((es.vectors.transpose() * es.vectors - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-9);
    for (int i = 1; i < n; ++i) EXPECT_LE(es.values[i - 1], es.values[i]);
  }
}

TEST(EigSym, AgreesWithIndependentSolver) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    SymMatrix m = random_symmetric(30, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m.dense());
    EXPECT_LE((eig_sym(m).values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(EigSym, LargestEntryOfEachEigenvectorIsPositive) {
  std::mt19937_64 rng(23);
  EigenSystem es = eig_sym(random_symmetric(25, rng));
  for (int k = 0; k < 25; ++k) {
    Eigen::Index arg;
    es.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(es.vectors(arg, k), 0.0);
  }
}

TEST(EigSym, ReportsExhaustedBudget) {
  std::mt19937_64 rng(24);
  JacobiOptions opts;
  opts.max_sweeps = 0;
  EXPECT_THROW(eig_sym(random_symmetric(6, rng), opts), EigenError);
}

TEST(ApplyFilter, IdentityIsOperatorProduct) {
  std::mt19937_64 rng(31);
  Graph g = fixtures::random_connected(15, 0.2, rng);
  SymMatrix l = normalized_laplacian(g);
  Signal x = Signal::Random(15);
  EXPECT_LE((apply_filter(SpectralFilter::identity(), l, x) - l.dense() * x).norm(), 1e-10);
}

TEST(ApplyFilter, LowPassPassesZeroFrequency) {
  std::mt19937_64 rng(32);
  Graph g = fixtures::random_connected(12, 0.3, rng);
  SymMatrix l = normalized_laplacian(g);
  Signal u1 = eig_sym(l).vectors.col(0);
  EXPECT_LE((apply_filter(SpectralFilter::lowpass(1.0), l, u1) - u1).norm(), 1e-10);
}

TEST(ApplyFilter, ConstantPolynomialIsIdentityMap) {
  std::mt19937_64 rng(33);
  SymMatrix l = normalized_laplacian(fixtures::random_connected(10, 0.3, rng));
  Signal x = Signal::Random(10);
  EXPECT_LE((apply_filter(SpectralFilter::polynomial({1.0, 0.0, 0.0}), l, x) - x).norm(), 1e-10);
}

TEST(ApplyFilter, DimensionMismatch) {
  EXPECT_THROW(apply_filter(SpectralFilter::identity(), SymMatrix(3), Signal::Ones(4)),
               std::invalid_argument);
}

TEST(LowpassSolve, ZeroOperator) {
  Signal x(3);
  x << 1, 2, 3;
  EXPECT_EQ(lowpass_solve(1.0, SymMatrix(3), x), x);
}

TEST(LowpassSolve, SingleEdgeHighFrequency) {
  Signal x(2);
  x << 1, -1;
  Signal y = lowpass_solve(1.0, normalized_laplacian(path_graph(2)), x);
  EXPECT_NEAR(y[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(y[1], -1.0 / 3.0, 1e-15);
}

TEST(LowpassSolve, ZeroFrequencyModeUnchanged) {
  // On a regular graph the zero-frequency mode is the constant vector; in
  // general it is D^{1/2} 1.
  Signal ones = Signal::Ones(6);
  EXPECT_LE((lowpass_solve(2.0, normalized_laplacian(cycle_graph(6)), ones) - ones).norm(), 1e-14);

  Graph star = star_graph(4);
  Signal mode(5);
  for (Node u = 0; u < 5; ++u) mode[u] = std::sqrt(static_cast<double>(star.degree(u)));
  EXPECT_LE((lowpass_solve(0.7, normalized_laplacian(star), mode) - mode).norm(), 1e-14);
}

TEST(LowpassSolve, AgreesWithSpectralRoute) {
  std::mt19937_64 rng(34);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      SymMatrix l = normalized_laplacian(fixtures::random_connected(25, 0.1, rng));
      Signal x = Signal::Random(25);
      Signal direct = lowpass_solve(alpha, l, x);
      Signal spectral = apply_filter(SpectralFilter::lowpass(alpha), l, x);
      EXPECT_LE((direct - spectral).norm() / spectral.norm(), 1e-8);
    }
  }
}

TEST(OperatorNorm, Fixtures) {
  EXPECT_EQ(operator_norm(SymMatrix(4)), 0.0);
  EXPECT_NEAR(operator_norm(k3_error()), k3_error_norm(), 1e-12);
  EXPECT_NEAR(operator_norm(k3_error()), 0.63508, 1e-5);
  EXPECT_NEAR(operator_norm(c6_error()), 1.0, 1e-12);
}

TEST(OperatorNorm, PowerIterationAgrees) {
  std::mt19937_64 rng(35);
  EXPECT_NEAR(operator_norm_power(k3_error()), k3_error_norm(), 1e-7 * k3_error_norm());
  EXPECT_NEAR(operator_norm_power(c6_error()), 1.0, 1e-7);
  for (int trial = 0; trial < 20; ++trial) {
    auto [l, lp] = random_pair(rng, 30);
    SymMatrix e = error_matrix(l, lp);
    const double ref = operator_norm(e);
    EXPECT_NEAR(operator_norm_power(e), ref, 1e-7 * std::max(ref, 1e-300));
  }
}

TEST(OneNorm, Fixtures) {
  EXPECT_EQ(matrix_one_norm(SymMatrix::identity(3)), 1.0);
  SymMatrix e = k3_error();
  EXPECT_NEAR(matrix_one_norm(e), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(row_one_norm(e, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(row_one_norm(e, 1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(matrix_one_norm(c6_error()), 1.0, 1e-15);
}

TEST(OneNorm, DominatesSpectralNorm) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    auto [l, lp] = random_pair(rng, 15);
    SymMatrix e = error_matrix(l, lp);
    EXPECT_LE(operator_norm(e), matrix_one_norm(e) + 1e-9);
  }
}

TEST(FilterDistance, Basics) {
  SymMatrix l = normalized_laplacian(fixtures::k3());
  SymMatrix lp = normalized_laplacian(apply_perturbation(fixtures::k3(), fixtures::k3_delete()));
  EXPECT_NEAR(filter_distance(SpectralFilter::lowpass(1.0), l, l), 0.0, 1e-14);
  EXPECT_NEAR(filter_distance(SpectralFilter::identity(), l, lp), operator_norm(error_matrix(l, lp)),
              1e-12);
}

TEST(FilterDistance, LowPassOnTriangleDelete) {
  SymMatrix l = normalized_laplacian(fixtures::k3());
  SymMatrix lp = normalized_laplacian(apply_perturbation(fixtures::k3(), fixtures::k3_delete()));
  // Materialize both filtered operators by explicit inversion.
  Eigen::MatrixXd gl = (Eigen::MatrixXd::Identity(3, 3) + l.dense()).inverse();
  Eigen::MatrixXd glp = (Eigen::MatrixXd::Identity(3, 3) + lp.dense()).inverse();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gl - glp);
  const double oracle = es.eigenvalues().cwiseAbs().maxCoeff();
  const double fd = filter_distance(SpectralFilter::lowpass(1.0), l, lp);
  EXPECT_NEAR(fd, oracle, 1e-12);
  EXPECT_NEAR(fd, 0.145357004, 1e-9);
  EXPECT_LE(fd, k3_error_norm());
}

TEST(FilterDistance, LowPassIsLinearlyStable) {
  std::mt19937_64 rng(37);
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto [l, lp] = random_pair(rng, 16);
      const double fd = filter_distance(SpectralFilter::lowpass(alpha), l, lp);
      EXPECT_LE(fd, alpha * operator_norm(error_matrix(l, lp)) + 1e-9);
    }
  }
}

TEST(FilterDistance, CubicPolynomialsOnShiftedLaplacianAreLinearlyStable) {
  std::mt19937_64 rng(38);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = fixtures::random_connected(16, 0.15, rng);
    Graph gp = apply_perturbation(g, fixtures::random_perturbation(g, 0.15, 0.03, rng));
    SpectralFilter f = SpectralFilter::polynomial({coef(rng), coef(rng), coef(rng), coef(rng)});
    SymMatrix s = graph_shift_operator(g, GsoKind::ShiftedLaplacian);
    SymMatrix sp = graph_shift_operator(gp, GsoKind::ShiftedLaplacian);
    const double e2 = operator_norm(error_matrix(s, sp));
    EXPECT_NEAR(e2, operator_norm(error_matrix(normalized_laplacian(g), normalized_laplacian(gp))),
                1e-12);
    EXPECT_LE(filter_distance(f, s, sp), stability_constant(f) * e2 + 1e-9);
  }
}

TEST(RelativeOutputDistance, Properties) {
  std::mt19937_64 rng(39);
  SpectralFilter f = SpectralFilter::lowpass(1.0);
  auto [l, lp] = random_pair(rng, 18);
  Signal x = Signal::Random(18);
  EXPECT_NEAR(relative_output_distance(f, l, l, x), 0.0, 1e-14);
  const double base = relative_output_distance(f, l, lp, x);
  EXPECT_NEAR(relative_output_distance(f, l, lp, Signal(7.0 * x)), base, 1e-12);
  EXPECT_THROW(relative_output_distance(f, l, lp, Signal::Zero(18)), std::invalid_argument);
}

TEST(RelativeOutputDistance, BoundedByFilterDistance) {
  std::mt19937_64 rng(40);
  std::normal_distribution<double> z;
  SpectralFilter f = SpectralFilter::lowpass(1.0);
  for (int pair = 0; pair < 5; ++pair) {
    auto [l, lp] = random_pair(rng, 20);
    Eigen::MatrixXd gl = filter_matrix(f, eig_sym(l));
    Eigen::MatrixXd glp = filter_matrix(f, eig_sym(lp));
    const double fd = filter_distance(gl, glp);
    for (int s = 0; s < 1000; ++s) {
      Signal x(20);
      for (int i = 0; i < 20; ++i) x[i] = z(rng);
      x.normalize();
      EXPECT_LE(relative_output_distance(gl, glp, x), fd + 1e-9);
    }
  }
}

TEST(StabilityConstant, TableValues) {
  EXPECT_EQ(stability_constant(SpectralFilter::lowpass(1.0)), 1.0);
  EXPECT_EQ(stability_constant(SpectralFilter::lowpass(2.5)), 2.5);
  EXPECT_EQ(stability_constant(SpectralFilter::polynomial({0.0, 1.0})), 1.0);
  EXPECT_EQ(stability_constant(SpectralFilter::polynomial({5.0, 0.0, 0.0})), 0.0);
  EXPECT_EQ(stability_constant(SpectralFilter::polynomial({1.0, -2.0, 0.5})), 3.0);
  EXPECT_EQ(stability_constant(SpectralFilter::monomial(3)), 3.0);
  EXPECT_EQ(stability_constant(SpectralFilter::identity()), 1.0);
}

TEST(ShiftOperators, SpectraAndAugmentedAdjacency) {
  std::mt19937_64 rng(41);
  Graph g = fixtures::random_connected(14, 0.2, rng);
  for (GsoKind k : {GsoKind::ShiftedLaplacian, GsoKind::ScaledShiftedLaplacian,
                    GsoKind::AugmentedAdjacency}) {
    EigenSystem es = eig_sym(graph_shift_operator(g, k));
    EXPECT_GE(es.values.minCoeff(), -1.0 - 1e-9) << to_string(k);
    EXPECT_LE(es.values.maxCoeff(), 1.0 + 1e-9) << to_string(k);
  }
  SymMatrix a = graph_shift_operator(path_graph(2), GsoKind::AugmentedAdjacency);
  EXPECT_DOUBLE_EQ(a(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(a(0, 1), 0.5);
  EXPECT_EQ(parse_gso_kind(to_string(GsoKind::AugmentedAdjacency)), GsoKind::AugmentedAdjacency);
  EXPECT_EQ(parse_filter_kind("lowpass"), FilterKind::LowPass);
  EXPECT_THROW(SpectralFilter::lowpass(0.0), std::invalid_argument);
}

}  // namespace
}  // namespace gfstab
